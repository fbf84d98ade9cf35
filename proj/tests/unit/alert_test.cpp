#include "drunkguard/alert/alert.hpp"
#include "drunkguard/net/tcp_listener.hpp"

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

using namespace drunkguard;
using namespace drunkguard::alert;
using fusion::Decision;
using fusion::FlagVector;

namespace {

const AlertRecord kGolden{1, sim::SimTime(3'000'000), {true, true, false}, 500'000, 80'000,
                          Decision::Cutoff};
const std::string kGoldenLine = "ALERT|v1|1|3000000|110|2|500000|80000|2\n";

ParseErrorKind kind_of(const std::string& line, int* field = nullptr) {
  try {
    (void)parse_alert(line);
  } catch (const AlertParseError& e) {
    if (field) *field = e.field();
    return e.kind();
  }
  FAIL("expected a parse error for: " << line);
  return ParseErrorKind::Magic;
}

AlertRecord random_record(std::mt19937_64& rng) {
  AlertRecord r;
  r.seq = 1 + rng() % (1ULL << 62);
  r.ts = sim::SimTime(static_cast<sim::Micros>(rng() % (1ULL << 62)));
  r.flags = FlagVector{rng() % 2 == 1, rng() % 2 == 1, rng() % 2 == 1};
  r.breath_micro_mg_l = static_cast<std::int64_t>(rng() % 10'000'002) - 1;
  r.bpm_milli = rng() % 5 == 0 ? -1 : static_cast<std::int64_t>(rng() % 300'000);
  r.decision = static_cast<Decision>(rng() % 3);
  return r;
}

}  // namespace

TEST_CASE("alert golden line") {
  CHECK(encode_alert(kGolden) == kGoldenLine);
  CHECK(parse_alert(kGoldenLine) == kGolden);
}

TEST_CASE("absent readings render as -1") {
  AlertRecord r = kGolden;
  r.bpm_milli = -1;
  r.breath_micro_mg_l = -1;
  CHECK(encode_alert(r) == "ALERT|v1|1|3000000|110|2|-1|-1|2\n");
  CHECK(parse_alert(encode_alert(r)) == r);
}

TEST_CASE("encode refuses records outside the domain") {
  AlertRecord r = kGolden;
  r.seq = 0;
  CHECK_THROWS_AS((void)encode_alert(r), std::invalid_argument);
  r = kGolden;
  r.breath_micro_mg_l = 10'000'001;
  CHECK_THROWS_AS((void)encode_alert(r), std::invalid_argument);
  r = kGolden;
  r.bpm_milli = -2;
  CHECK_THROWS_AS((void)encode_alert(r), std::invalid_argument);
}

TEST_CASE("parse errors name the offending field") {
  int field = -1;
  CHECK(kind_of("ALERT|v2|1|3000000|110|2|500000|80000|2\n", &field) == ParseErrorKind::Version);
  CHECK(field == 1);
  CHECK(kind_of("ALERT|v1|1|3000000|110|2|500000|80000\n", &field) == ParseErrorKind::FieldCount);
  CHECK(field == 8);
  CHECK(kind_of("ALERT|v1|1|3000000|110|2|500000|80000|2|9\n") == ParseErrorKind::FieldCount);
  CHECK(kind_of("ALARM|v1|1|3000000|110|2|500000|80000|2\n", &field) == ParseErrorKind::Magic);
  CHECK(field == 0);
  CHECK(kind_of("ALERT|v1|1|3000000|110|2|500000|80000|2") == ParseErrorKind::MissingNewline);
  CHECK(kind_of("ALERT|v1|1|3x00000|110|2|500000|80000|2\n", &field) == ParseErrorKind::NotDecimal);
  CHECK(field == 3);
  CHECK(kind_of("ALERT|v1|01|3000000|110|2|500000|80000|2\n", &field) == ParseErrorKind::NotDecimal);
  CHECK(field == 2);
  CHECK(kind_of("ALERT|v1|1|-1|110|2|500000|80000|2\n", &field) == ParseErrorKind::NotDecimal);
  CHECK(field == 3);
  CHECK(kind_of("ALERT|v1|1|3000000|120|2|500000|80000|2\n") == ParseErrorKind::BadFlags);
  CHECK(kind_of("ALERT|v1|1|3000000|110|3|500000|80000|2\n") == ParseErrorKind::CountMismatch);
  CHECK(kind_of("ALERT|v1|1|3000000|110|2|500000|80000|3\n") == ParseErrorKind::OutOfRange);
  CHECK(kind_of("ALERT|v1|0|3000000|110|2|500000|80000|2\n") == ParseErrorKind::OutOfRange);
  CHECK(kind_of("ALERT|v1|1|3000000|110|2|10000001|80000|2\n") == ParseErrorKind::OutOfRange);
  CHECK(kind_of("ALERT|v1|1|99999999999999999999|110|2|0|0|2\n") == ParseErrorKind::OutOfRange);
  CHECK(kind_of("ALERT|v1|1|3000000|110|2|+5|80000|2\n") == ParseErrorKind::NotDecimal);
  CHECK(kind_of("ALERT|v1|1|3000000|110|2|500000|-2|2\n") == ParseErrorKind::NotDecimal);
}

TEST_CASE("property: random records round-trip") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 10'000; ++i) {
    const auto r = random_record(rng);
    REQUIRE(parse_alert(encode_alert(r)) == r);
  }
}

TEST_CASE("property: single-byte mutations never parse to a different encoding") {
  std::mt19937_64 rng(43);
  const std::string alphabet = "0123456789|-\nAELRTvx ";
  for (int i = 0; i < 5'000; ++i) {
    std::string line = encode_alert(random_record(rng));
    line[rng() % line.size()] = alphabet[rng() % alphabet.size()];
    try {
      const auto parsed = parse_alert(line);
      CHECK(encode_alert(parsed) == line);
    } catch (const AlertParseError&) {
    }
  }
}

TEST_CASE("contact labels are unique") {
  ContactList list;
  list.add({"mum", {"127.0.0.1", 1}});
  CHECK_THROWS_AS(list.add({"mum", {"127.0.0.1", 2}}), std::invalid_argument);
  CHECK(list.entries().size() == 1);
}

TEST_CASE("forward to an empty list sends nothing") {
  net::ScriptedTransport t;
  CHECK(forward(kGolden, ContactList{}, t).empty());
}

TEST_CASE("forward reports per-contact outcomes in list order") {
  net::ScriptedTransport t;
  const net::Address down{"10.0.0.2", 9};
  t.script(down, {false});
  ContactList list({{"a", {"10.0.0.1", 9}}, {"b", down}, {"c", {"10.0.0.3", 9}}});
  const auto results = forward(kGolden, list, t);
  REQUIRE(results.size() == 3);
  CHECK(results[0].ok);
  CHECK_FALSE(results[1].ok);
  CHECK_FALSE(results[1].error.empty());
  CHECK(results[2].ok);
  CHECK(results[1].label == "b");
}

TEST_CASE("forward delivers identical bytes to two loopback contacts") {
  net::LoopbackSink first;
  net::LoopbackSink second;
  net::TcpTransport tcp;
  ContactList list({{"x", first.address()}, {"y", second.address()}});
  const auto results = forward(kGolden, list, tcp);
  REQUIRE(results.size() == 2);
  CHECK(results[0].ok);
  CHECK(results[1].ok);
  REQUIRE(first.wait_for(1, std::chrono::seconds(2)));
  REQUIRE(second.wait_for(1, std::chrono::seconds(2)));
  CHECK(first.received().front() == net::to_bytes(kGoldenLine));
  CHECK(first.received() == second.received());
}

TEST_CASE("forward over TCP with one contact down") {
  net::LoopbackSink up1;
  net::LoopbackSink up2;
  net::Address dead;
  {
    net::LoopbackSink gone;
    dead = gone.address();
    gone.stop();
  }
  net::TcpTransport tcp(std::chrono::milliseconds(500));
  ContactList list({{"a", up1.address()}, {"b", dead}, {"c", up2.address()}});
  const auto results = forward(kGolden, list, tcp);
  REQUIRE(results.size() == 3);
  CHECK(results[0].ok);
  CHECK_FALSE(results[1].ok);
  CHECK(results[2].ok);
}
