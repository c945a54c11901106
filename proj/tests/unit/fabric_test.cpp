// Copyright 2026 The IRSM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include "doctest.h"
#include "irsm/core/error.hpp"
#include "irsm/netsim/fabric.hpp"

using namespace irsm;
using namespace irsm::netsim;

namespace {

LinkProfile lossless(std::uint64_t bw, SimDuration delay) { return LinkProfile{"TEST", bw, delay, 0.0}; }

struct Rig {
  VirtualClock clock;
  Trace trace;
  Fabric fabric{clock, trace, 42};
  std::vector<Delivery> at_center;
};

}  // namespace

TEST_CASE("management frame on GPRS arrives after serialization plus delay") {
  Rig r;
  r.fabric.attach_station("s", *find_builtin_profile("GPRS"));
  r.fabric.set_center_receiver([&](const Delivery& d) { r.at_center.push_back(d); });
  CHECK(r.fabric.management_rate("s") == 200);
  CHECK(r.fabric.function_rate("s") == 1800);
  const auto receipt = r.fabric.send("s", Direction::kUp, TrafficClass::Management(), std::string(1000, 'm'));
  REQUIRE(receipt.delivery_at);
  // 1000 B at 2000 B/s plus 300 ms one-way, when no retransmission occurs.
  if (r.fabric.stats("s", Direction::kUp, TrafficClass::Management()).retransmissions == 0) {
    CHECK(*receipt.delivery_at == at(millis(800)));
  }
  r.clock.advance(at(seconds(5)));
  REQUIRE(r.at_center.size() == 1);
  CHECK(r.at_center[0].delivered_at == *receipt.delivery_at);
  CHECK(r.at_center[0].payload.size() == 1000);
}

TEST_CASE("management admission uses the reserved bucket") {
  Rig r;
  r.fabric.attach_station("s", lossless(2000, millis(300)));
  r.fabric.set_center_receiver([&](const Delivery& d) { r.at_center.push_back(d); });
  // Burst 4096 admits four 1000 B frames at once, the fifth waits for 904 B of refill at 200 B/s.
  for (int i = 0; i < 5; ++i) r.fabric.send("s", Direction::kUp, TrafficClass::Management(), std::string(1000, 'x'));
  r.clock.advance(at(seconds(20)));
  REQUIRE(r.at_center.size() == 5);
  CHECK(r.at_center[0].delivered_at == at(millis(800)));
  CHECK(r.at_center[3].delivered_at == at(millis(2300)));
  CHECK(r.at_center[4].delivered_at == at(SimDuration{4'520'000 + 500'000 + 300'000}));
}

TEST_CASE("lossless links deliver in send order per class") {
  Rig r;
  r.fabric.attach_station("s", lossless(10'000, millis(5)));
  r.fabric.set_app_rate("s", "app", 4000);
  r.fabric.set_center_receiver([&](const Delivery& d) { r.at_center.push_back(d); });
  std::vector<std::uint64_t> mgmt, fn;
  for (int i = 0; i < 60; ++i) {
    const auto size = static_cast<std::size_t>(100 + (i * 37) % 900);
    if (i % 3 == 0) {
      mgmt.push_back(r.fabric.send("s", Direction::kUp, TrafficClass::Management(), std::string(size, 'm')).sequence);
    } else {
      fn.push_back(r.fabric.send("s", Direction::kUp, TrafficClass::Function("app"), std::string(size, 'f')).sequence);
    }
  }
  r.clock.advance(at(seconds(120)));
  std::vector<std::uint64_t> got_m, got_f;
  for (const auto& d : r.at_center) (d.traffic_class.management ? got_m : got_f).push_back(d.sequence);
  CHECK(got_m == mgmt);
  CHECK(got_f == fn);
  const auto& st = r.fabric.stats("s", Direction::kUp, TrafficClass::Function("app"));
  CHECK(st.lost_frames == 0);
  CHECK(st.delivered_frames == fn.size());
}

TEST_CASE("function bytes respect rate times window plus burst") {
  Rig r;
  r.fabric.attach_station("s", lossless(2000, millis(300)));
  r.fabric.set_app_rate("s", "flood", 500);
  r.fabric.set_recording(true);
  r.fabric.set_center_receiver([](const Delivery&) {});
  // Offer ten times the rate for 60 s.
  for (int ms = 0; ms < 60'000; ms += 20) {
    r.clock.advance(at(millis(ms)));
    r.fabric.send("s", Direction::kUp, TrafficClass::Function("flood"), std::string(100, 'f'));
  }
  r.clock.advance(at(seconds(200)));
  const auto& st = r.fabric.stats("s", Direction::kUp, TrafficClass::Function("flood"));
  CHECK(st.backlog_drops > 0);
  const auto& d = st.deliveries;
  REQUIRE(!d.empty());
  // Admission follows the bucket; every window of length W holds at most 500*W + 500 bytes.
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::uint64_t bytes = 0;
    for (std::size_t j = i; j < d.size() && d[j].first - d[i].first <= seconds(10); ++j) bytes += d[j].second;
    CHECK(bytes <= 500 * 10 + 500);
  }
}

TEST_CASE("fabric errors") {
  Rig r;
  r.fabric.attach_station("s", lossless(2000, millis(10)));
  CHECK_THROWS_AS(r.fabric.send("nope", Direction::kUp, TrafficClass::Management(), "x"), Error);
  try {
    r.fabric.send("s", Direction::kUp, TrafficClass::Function("unset"), "x");
    FAIL("unconfigured app accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  r.fabric.set_app_rate("s", "a", 100);
  try {
    r.fabric.send("s", Direction::kUp, TrafficClass::Function("a"), std::string(101, 'x'));
    FAIL("oversize accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFrameTooLarge);
  }
  r.fabric.set_link_up("s", false);
  try {
    r.fabric.send("s", Direction::kUp, TrafficClass::Management(), "x");
    FAIL("link down accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLinkDown);
  }
  CHECK(r.trace.lines().back().find("LINK_DOWN") != std::string::npos);
}

TEST_CASE("same seed gives the same trace") {
  auto run = [](std::uint64_t seed) {
    VirtualClock clock;
    Trace trace;
    Fabric f(clock, trace, seed);
    f.attach_station("s", LinkProfile{"LOSSY", 5000, millis(40), 0.3});
    f.set_app_rate("s", "a", 2000);
    for (int i = 0; i < 200; ++i) {
      clock.advance(at(millis(i * 50)));
      f.send("s", Direction::kUp, i % 2 ? TrafficClass::Management() : TrafficClass::Function("a"),
             std::string(200, 'x'));
    }
    clock.advance(at(seconds(60)));
    return trace.digest();
  };
  CHECK(run(5) == run(5));
  CHECK(run(5) != run(6));
}

TEST_CASE("trace write and summarize") {
  Trace t;
  t.record(at(millis(1500)), "SEND", "a=1");
  t.record(at(seconds(2)), "DELIVER", "a=1");
  t.record(at(seconds(3)), "SEND", "a=2");
  CHECK(t.lines()[0] == "t=1.500000 EVENT SEND a=1");
  std::stringstream ss;
  t.write(ss);
  const auto s = summarize_trace(ss);
  CHECK(s.events == 3);
  CHECK(s.digest_ok());
  CHECK(s.computed_digest == t.digest());
  CHECK(s.last_time == doctest::Approx(3.0));

  std::string text = ss.str();
  text.replace(text.find("a=2"), 3, "a=3");
  std::stringstream tampered(text);
  CHECK_FALSE(summarize_trace(tampered).digest_ok());
}
