#include "drunkguard/alert/alert.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>

namespace drunkguard::alert {

namespace {

constexpr std::string_view kMagic = "ALERT";
constexpr std::string_view kVersion = "v1";
constexpr std::size_t kFieldCount = 9;

enum Field { kMagicField, kVersionField, kSeq, kTs, kFlags, kCount, kBreath, kBpm, kDecision };

void check_domain(const AlertRecord& r) {
  if (r.seq < 1) throw std::invalid_argument("alert seq must be >= 1");
  if (r.breath_micro_mg_l < -1 || r.breath_micro_mg_l > 10'000'000) {
    throw std::invalid_argument("alert breath must be -1 or within [0, 10000000]");
  }
  if (r.bpm_milli < -1) throw std::invalid_argument("alert bpm must be >= -1");
}

// Canonical decimal: "0", or a non-zero digit followed by digits; "-1" only
// when allow_absent.
std::int64_t parse_decimal(std::string_view s, int field, bool allow_absent) {
  if (allow_absent && s == "-1") return -1;
  const bool digits = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
  if (!digits || (s.size() > 1 && s.front() == '0')) {
    throw AlertParseError(ParseErrorKind::NotDecimal, field,
                          "field " + std::to_string(field) + " is not a canonical decimal");
  }
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw AlertParseError(ParseErrorKind::OutOfRange, field,
                          "field " + std::to_string(field) + " overflows");
  }
  return value;
}

}  // namespace

std::string encode_alert(const AlertRecord& r) {
  check_domain(r);
  std::string out(kMagic);
  out += '|';
  out += kVersion;
  out += '|' + std::to_string(r.seq);
  out += '|' + std::to_string(r.ts.micros());
  out += '|';
  out += r.flags.a ? '1' : '0';
  out += r.flags.h ? '1' : '0';
  out += r.flags.d ? '1' : '0';
  out += '|' + std::to_string(r.flags.count());
  out += '|' + std::to_string(r.breath_micro_mg_l);
  out += '|' + std::to_string(r.bpm_milli);
  out += '|' + std::to_string(static_cast<int>(r.decision));
  out += '\n';
  return out;
}

AlertParseError::AlertParseError(ParseErrorKind kind, int field, const std::string& what)
    : std::runtime_error(what), kind_(kind), field_(field) {}

AlertRecord parse_alert(std::string_view line) {
  if (line.empty() || line.back() != '\n') {
    throw AlertParseError(ParseErrorKind::MissingNewline, kDecision,
                          "alert line must end with a newline");
  }
  line.remove_suffix(1);

  std::array<std::string_view, kFieldCount> fields;
  std::size_t n = 0;
  for (;;) {
    const auto bar = line.find('|');
    if (n == kFieldCount) {
      throw AlertParseError(ParseErrorKind::FieldCount, static_cast<int>(n),
                            "expected 9 fields, got more");
    }
    fields[n++] = line.substr(0, bar);
    if (bar == std::string_view::npos) break;
    line.remove_prefix(bar + 1);
  }
  if (n != kFieldCount) {
    throw AlertParseError(ParseErrorKind::FieldCount, static_cast<int>(n),
                          "expected 9 fields, got " + std::to_string(n));
  }
  if (fields[kMagicField] != kMagic) {
    throw AlertParseError(ParseErrorKind::Magic, kMagicField, "bad magic");
  }
  if (fields[kVersionField] != kVersion) {
    throw AlertParseError(ParseErrorKind::Version, kVersionField,
                          "unsupported version '" + std::string(fields[kVersionField]) + "'");
  }

  AlertRecord r;
  const std::int64_t seq = parse_decimal(fields[kSeq], kSeq, false);
  if (seq < 1) throw AlertParseError(ParseErrorKind::OutOfRange, kSeq, "seq must be >= 1");
  r.seq = static_cast<std::uint64_t>(seq);
  r.ts = sim::SimTime(parse_decimal(fields[kTs], kTs, false));

  const std::string_view flags = fields[kFlags];
  if (flags.size() != 3 ||
      !std::all_of(flags.begin(), flags.end(), [](char c) { return c == '0' || c == '1'; })) {
    throw AlertParseError(ParseErrorKind::BadFlags, kFlags, "flags must be three 0/1 chars");
  }
  r.flags = fusion::FlagVector{flags[0] == '1', flags[1] == '1', flags[2] == '1'};
  if (parse_decimal(fields[kCount], kCount, false) != r.flags.count()) {
    throw AlertParseError(ParseErrorKind::CountMismatch, kCount, "count does not match flags");
  }

  r.breath_micro_mg_l = parse_decimal(fields[kBreath], kBreath, true);
  if (r.breath_micro_mg_l > 10'000'000) {
    throw AlertParseError(ParseErrorKind::OutOfRange, kBreath, "breath above 10 mg/L");
  }
  r.bpm_milli = parse_decimal(fields[kBpm], kBpm, true);

  const std::int64_t decision = parse_decimal(fields[kDecision], kDecision, false);
  if (decision > 2) {
    throw AlertParseError(ParseErrorKind::OutOfRange, kDecision, "decision must be 0, 1 or 2");
  }
  r.decision = static_cast<fusion::Decision>(decision);
  return r;
}

ContactList::ContactList(std::vector<Contact> entries) {
  for (auto& c : entries) add(std::move(c));
}

void ContactList::add(Contact contact) {
  const bool dup = std::any_of(entries_.begin(), entries_.end(),
                               [&](const Contact& c) { return c.label == contact.label; });
  if (dup) {
    throw std::invalid_argument("duplicate contact label '" + contact.label + "'");
  }
  entries_.push_back(std::move(contact));
}

std::vector<ForwardResult> forward(const AlertRecord& record, const ContactList& contacts,
                                   net::Transport& transport) {
  std::vector<ForwardResult> results;
  if (contacts.empty()) return results;
  const net::Bytes line = net::to_bytes(encode_alert(record));
  for (const Contact& c : contacts.entries()) {
    const net::SendOutcome outcome = transport.send(c.endpoint, line);
    results.push_back(ForwardResult{c.label, outcome.ok, outcome.error});
  }
  return results;
}

}  // namespace drunkguard::alert
