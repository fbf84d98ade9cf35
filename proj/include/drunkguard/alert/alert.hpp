#pragma once

#include "drunkguard/fusion/engine.hpp"
#include "drunkguard/net/transport.hpp"
#include "drunkguard/sim/time.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace drunkguard::alert {

/// Message delivered to the phone app when the interlock acts.
/// Absent readings are carried as -1.
struct AlertRecord {
  std::uint64_t seq = 1;
  sim::SimTime ts;
  fusion::FlagVector flags;
  std::int64_t breath_micro_mg_l = -1;
  std::int64_t bpm_milli = -1;
  fusion::Decision decision = fusion::Decision::Normal;

  friend bool operator==(const AlertRecord&, const AlertRecord&) = default;
};

/// ALERT|v1|<seq>|<ts_us>|<a><h><d>|<c>|<breath>|<bpm>|<decision>\n
/// Throws std::invalid_argument for a record outside the codec's domain
/// (seq < 1, breath outside [-1, 10'000'000], bpm < -1).
[[nodiscard]] std::string encode_alert(const AlertRecord& record);

enum class ParseErrorKind {
  MissingNewline,
  FieldCount,
  Magic,
  Version,
  NotDecimal,
  OutOfRange,
  BadFlags,
  CountMismatch,
};

class AlertParseError : public std::runtime_error {
 public:
  AlertParseError(ParseErrorKind kind, int field, const std::string& what);

  [[nodiscard]] ParseErrorKind kind() const { return kind_; }
  /// Zero-based index of the offending field (0 = magic, 8 = decision).
  [[nodiscard]] int field() const { return field_; }

 private:
  ParseErrorKind kind_;
  int field_;
};

/// Strict inverse of encode_alert: accepts exactly the lines encode_alert can
/// produce, including the trailing newline.
[[nodiscard]] AlertRecord parse_alert(std::string_view line);

struct Contact {
  std::string label;
  net::Address endpoint;
};

/// People the app forwards alerts to. Labels are unique.
class ContactList {
 public:
  ContactList() = default;
  explicit ContactList(std::vector<Contact> entries);

  /// Throws std::invalid_argument on a duplicate label.
  void add(Contact contact);

  [[nodiscard]] const std::vector<Contact>& entries() const { return entries_; }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

 private:
  std::vector<Contact> entries_;
};

struct ForwardResult {
  std::string label;
  bool ok = false;
  std::string error;
};

/// Sends the encoded alert line once to every contact, in list order.
/// Failures are reported per contact and never thrown.
[[nodiscard]] std::vector<ForwardResult> forward(const AlertRecord& record,
                                                 const ContactList& contacts,
                                                 net::Transport& transport);

}  // namespace drunkguard::alert
