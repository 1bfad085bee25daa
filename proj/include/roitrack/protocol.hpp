#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "roitrack/controller.hpp"

namespace roitrack::fk {

// Ground-station link: ASCII frames "Yaw <rate>" / "Pitch <rate>" in rad/s,
// each terminated by a line feed, 9600 bps 8N1.

inline constexpr char kTerminator = '\n';
inline constexpr int kBaudRate = 9600;
inline constexpr int kBitsPerByte = 10;  // start + 8 data + stop
inline constexpr double kLineBytesPerSecond = static_cast<double>(kBaudRate) / kBitsPerByte;

struct SerialFrame {
  std::string text;  // body without terminator

  std::string wire() const { return text + kTerminator; }
  std::size_t wire_size() const { return text.size() + 1; }
  friend bool operator==(const SerialFrame&, const SerialFrame&) = default;
};

enum class ErrorCode {
  MixedAxes,      // both rates nonzero; not representable as one frame
  OutOfRange,     // |rate| > 0.3
  Malformed,      // bad layout: separators, terminator, digits
  UnknownAxis,    // axis word other than Yaw / Pitch
  NonNumeric,     // payload is not a decimal number
};

std::string_view to_string(ErrorCode code);

class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Rate as the wire shows it: rounded to 0.01, trailing zeros dropped,
/// at least one fractional digit ("0.3", "-0.25").
std::string format_rate(double rate);

/// Zero or one frame. Throws ProtocolError for two-axis or over-range commands.
std::vector<SerialFrame> encode(const GimbalCommand& cmd);

/// Accepts a frame body, optionally followed by the terminator.
GimbalCommand decode(std::string_view frame);

/// Send-on-change policy: a command that differs from the last one sent goes
/// out in the same iteration; an unchanged nonzero command is re-sent every
/// `keepalive_s` seconds (0 disables); idle commands emit nothing.
class CommandLink {
 public:
  explicit CommandLink(double keepalive_s = 1.0) : keepalive_s_(keepalive_s) {}

  std::vector<SerialFrame> update(double t, const GimbalCommand& cmd);

 private:
  double keepalive_s_;
  GimbalCommand last_{};
  std::optional<double> last_sent_t_;
};

struct LoggedFrame {
  double t = 0.0;
  std::string text;
};

/// Byte sink with a bounded transmit buffer drained at the line rate.
class Transport {
 public:
  virtual ~Transport() = default;
  /// False means backpressure: nothing was queued and the caller keeps the frame.
  virtual bool try_send(const SerialFrame& frame, double t) = 0;
};

/// Loopback transport that models a 9600 bps UART and logs every frame.
class MockTransport : public Transport {
 public:
  explicit MockTransport(std::size_t buffer_bytes = 64,
                         double bytes_per_second = kLineBytesPerSecond);

  bool try_send(const SerialFrame& frame, double t) override;

  const std::vector<LoggedFrame>& log() const { return log_; }
  std::size_t bytes_sent() const { return bytes_sent_; }
  std::size_t rejected() const { return rejected_; }
  /// Bytes still waiting in the transmit buffer at time t.
  double backlog(double t) const;

 private:
  void drain_to(double t);

  std::size_t capacity_;
  double rate_;
  double queued_ = 0.0;
  double clock_ = 0.0;
  std::size_t bytes_sent_ = 0;
  std::size_t rejected_ = 0;
  std::vector<LoggedFrame> log_;
};

}  // namespace roitrack::fk
