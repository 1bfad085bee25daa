#include "roitrack/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "roitrack/keyvalue.hpp"

namespace roitrack::fk {

namespace {

constexpr double kRangeSlack = 1e-12;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// -?D+(.D{1,2})?
bool strict_decimal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  const auto dot = s.find('.');
  const auto whole = s.substr(0, dot);
  if (whole.empty() || !std::all_of(whole.begin(), whole.end(), is_digit)) return false;
  if (dot == std::string_view::npos) return true;
  const auto frac = s.substr(dot + 1);
  return !frac.empty() && frac.size() <= 2 && std::all_of(frac.begin(), frac.end(), is_digit);
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MixedAxes: return "mixed-axes";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::Malformed: return "malformed";
    case ErrorCode::UnknownAxis: return "unknown-axis";
    case ErrorCode::NonNumeric: return "non-numeric";
  }
  return "malformed";
}

std::string format_rate(double rate) {
  const long long hundredths = std::llround(rate * 100.0);
  const long long mag = std::llabs(hundredths);
  std::string out = hundredths < 0 ? "-" : "";
  out += std::to_string(mag / 100);
  out += '.';
  out += static_cast<char>('0' + (mag / 10) % 10);
  if (mag % 10 != 0) out += static_cast<char>('0' + mag % 10);
  return out;
}

std::vector<SerialFrame> encode(const GimbalCommand& cmd) {
  if (cmd.idle()) return {};
  if (!cmd.single_axis()) {
    throw ProtocolError(ErrorCode::MixedAxes, "yaw and pitch cannot be sent in one frame");
  }
  const bool yaw = cmd.yaw_rate != 0.0;
  const double rate = yaw ? cmd.yaw_rate : cmd.pitch_rate;
  if (!(std::abs(rate) <= kMaxGimbalRate + kRangeSlack)) {
    throw ProtocolError(ErrorCode::OutOfRange, "rate exceeds 0.3 rad/s: " + format_exact(rate));
  }
  if (std::llround(rate * 100.0) == 0) {
    throw ProtocolError(ErrorCode::OutOfRange,
                        "rate below the 0.01 rad/s wire resolution: " + format_exact(rate));
  }
  return {SerialFrame{std::string(yaw ? "Yaw " : "Pitch ") + format_rate(rate)}};
}

GimbalCommand decode(std::string_view frame) {
  if (!frame.empty() && frame.back() == kTerminator) frame.remove_suffix(1);
  const std::string text(frame);
  const auto space = frame.find(' ');
  if (space == std::string_view::npos) {
    if (frame == "Yaw" || frame == "Pitch") {
      throw ProtocolError(ErrorCode::Malformed, "missing rate in frame '" + text + "'");
    }
    throw ProtocolError(ErrorCode::Malformed, "expected '<axis> <rate>', got '" + text + "'");
  }
  const auto axis = frame.substr(0, space);
  const auto payload = frame.substr(space + 1);
  if (axis != "Yaw" && axis != "Pitch") {
    throw ProtocolError(ErrorCode::UnknownAxis, "unknown axis '" + std::string(axis) + "'");
  }
  const auto value = parse_double(payload);
  if (!value) {
    throw ProtocolError(ErrorCode::NonNumeric, "rate is not a number: '" + std::string(payload) + "'");
  }
  if (!strict_decimal(payload)) {
    throw ProtocolError(ErrorCode::Malformed, "rate must be a plain decimal with at most two "
                                              "fractional digits: '" + std::string(payload) + "'");
  }
  if (std::abs(*value) > kMaxGimbalRate + kRangeSlack) {
    throw ProtocolError(ErrorCode::OutOfRange, "rate exceeds 0.3 rad/s: " + std::string(payload));
  }
  return axis == "Yaw" ? GimbalCommand{*value, 0.0} : GimbalCommand{0.0, *value};
}

std::vector<SerialFrame> CommandLink::update(double t, const GimbalCommand& cmd) {
  const bool changed = !(cmd == last_);
  last_ = cmd;
  if (cmd.idle()) {
    last_sent_t_.reset();
    return {};
  }
  const bool keepalive_due =
      keepalive_s_ > 0.0 && last_sent_t_ && t - *last_sent_t_ >= keepalive_s_ - 1e-9;
  if (!changed && !keepalive_due) return {};
  last_sent_t_ = t;
  return encode(cmd);
}

MockTransport::MockTransport(std::size_t buffer_bytes, double bytes_per_second)
    : capacity_(buffer_bytes), rate_(bytes_per_second) {}

void MockTransport::drain_to(double t) {
  if (t > clock_) {
    queued_ = std::max(0.0, queued_ - (t - clock_) * rate_);
    clock_ = t;
  }
}

double MockTransport::backlog(double t) const {
  return t > clock_ ? std::max(0.0, queued_ - (t - clock_) * rate_) : queued_;
}

bool MockTransport::try_send(const SerialFrame& frame, double t) {
  drain_to(t);
  const auto size = static_cast<double>(frame.wire_size());
  if (queued_ + size > static_cast<double>(capacity_)) {
    ++rejected_;
    return false;
  }
  queued_ += size;
  bytes_sent_ += frame.wire_size();
  log_.push_back({t, frame.text});
  return true;
}

}  // namespace roitrack::fk
