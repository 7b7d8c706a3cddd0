#include <doctest.h>

#include "mis/analysis.hpp"
#include "mis/benchmarks.hpp"
#include "mis/unfold.hpp"

using namespace mis;

TEST_CASE("every family instance validates cleanly") {
  for (const std::string& fam : bench::family_names()) {
    for (int n = fam == "ttc" ? 1 : 2; n <= 4; ++n) {
      ValidationReport r = validate(bench::family(fam, n));
      INFO(fam, "(", n, ")");
      CHECK(r.clean());
    }
  }
  CHECK(validate(bench::ttc_sabotaged(2)).clean());
}

TEST_CASE("family registry knows its members") {
  auto names = bench::family_names();
  CHECK(names == std::vector<std::string>{"ttc", "dc1", "dc2", "dc0"});
  for (const std::string& f : names) CHECK(bench::has_family(f));
  CHECK_FALSE(bench::has_family("nope"));
  CHECK_THROWS_AS(bench::family("nope", 2), std::invalid_argument);
  CHECK_THROWS_AS(bench::dc1(1), std::invalid_argument);
  CHECK_THROWS_AS(bench::ttc(0), std::invalid_argument);
}

TEST_CASE("the mutex predicate covers all train pairs") {
  CHECK(bench::ttc_mutex_predicate(1) == "true");
  std::string p2 = bench::ttc_mutex_predicate(2);
  CHECK(p2.find("in_tunnel_1") != std::string::npos);
  CHECK(p2.find("in_tunnel_2") != std::string::npos);
  std::string p3 = bench::ttc_mutex_predicate(3);
  CHECK(p3.find("in_tunnel_3") != std::string::npos);
}

TEST_CASE("broadcast coin variant really broadcasts its utterances") {
  Mis m = bench::dc1(3);
  const Module* utt = m.find_module("C_1", "utt");
  REQUIRE(utt != nullptr);
  bool broadcast_seen = false;
  for (const auto& [sa, alts] : utt->out)
    for (const TokenSet& alt : alts)
      for (const DirectedToken& t : alt)
        if (t.symbol.rfind("u_", 0) == 0) {
          CHECK(t.recipient.empty());
          broadcast_seen = true;
        }
  CHECK(broadcast_seen);
}

TEST_CASE("channel variant addresses utterances, never broadcasts them") {
  Mis m = bench::dc2(3);
  for (int i = 1; i <= 3; ++i) {
    const Module* utt = m.find_module("C_" + std::to_string(i), "utt");
    REQUIRE(utt != nullptr);
    for (const auto& [sa, alts] : utt->out)
      for (const TokenSet& alt : alts)
        for (const DirectedToken& t : alt)
          if (t.symbol.rfind("u_", 0) == 0) CHECK_FALSE(t.recipient.empty());
    CHECK(m.find_module("C_" + std::to_string(i), "cnt") != nullptr);
  }
  CHECK(bench::dc1(3).find_agent("Counter") != nullptr);
  CHECK(bench::dc1(3).find_module("C_1", "cnt") == nullptr);
}

TEST_CASE("identifier-free variant is structurally uniform across agents") {
  Mis m = bench::dc0(4);
  const Agent* c1 = m.find_agent("C_1");
  REQUIRE(c1 != nullptr);
  for (int i = 2; i <= 4; ++i) {
    const Agent* ci = m.find_agent("C_" + std::to_string(i));
    REQUIRE(ci != nullptr);
    REQUIRE(ci->modules.size() == c1->modules.size());
    for (std::size_t k = 0; k < ci->modules.size(); ++k) {
      const Module& a = c1->modules[k];
      const Module& b = ci->modules[k];
      CHECK(a.states == b.states);
      CHECK(a.init == b.init);
      CHECK(a.avail == b.avail);
      CHECK(a.in_list.entries.size() == b.in_list.entries.size());
      CHECK(a.trans.size() == b.trans.size());
    }
  }
}

TEST_CASE("identifier-free modules never mention another agent by name") {
  Mis m = bench::dc0(3);
  for (const Agent& a : m.agents) {
    if (a.id.rfind("C_", 0) != 0) continue;
    for (const Module& mod : a.modules)
      for (const auto& [sa, alts] : mod.out)
        for (const TokenSet& alt : alts)
          for (const DirectedToken& t : alt)
            CHECK((t.recipient.empty() || t.recipient == a.id ||
                   t.recipient == "Oracle"));
  }
}

TEST_CASE("each benchmark instance unfolds within the default budget") {
  CHECK(unfold(bench::ttc(3)).state_count() > 0);
  CHECK(unfold(bench::dc1(3)).state_count() > 0);
  CHECK(unfold(bench::dc0(3)).state_count() > 0);
}
