#include "mis/benchmarks.hpp"

#include <stdexcept>

namespace mis {
namespace bench {

namespace {

std::string num(int i) { return std::to_string(i); }

Condition S(const Name& q) { return Condition::state_is(q); }
Condition H(const Name& sym) { return Condition::has(sym); }
Condition AND(std::vector<Condition> cs) { return Condition::conj(std::move(cs)); }
Condition OR(std::vector<Condition> cs) { return Condition::disj(std::move(cs)); }
Condition TRUE() { return Condition::truth(); }

DirectedToken to(const Name& sym, const Name& who) { return {sym, who}; }
DirectedToken bcast(const Name& sym) { return {sym, ""}; }

DecisionEntry entry(Condition g, std::set<Name> v) {
  return DecisionEntry{std::move(g), std::move(v)};
}

void finish_alphabets(Mis& m) {
  for (const Agent& a : m.agents) {
    AgentSymbols s = agent_symbols(a);
    m.agent_names.insert(s.agent_names.begin(), s.agent_names.end());
    m.actions.insert(s.actions.begin(), s.actions.end());
    m.interaction_alphabet.insert(s.interaction_symbols.begin(),
                                  s.interaction_symbols.end());
  }
}

// ---------------------------------------------------------------- ttc ----

Module ttc_train_module(int i) {
  Name self = "tr_" + num(i);
  Name try_i = "try_" + num(i);
  Module m;
  m.name = "m";
  m.states = {"out", "tun_needed", "granted", "in"};
  m.init = {"out"};
  m.avail = {{"out", {"nop", "approach"}},
             {"tun_needed", {"request"}},
             {"granted", {"enter"}},
             {"in", {"nop", "leave"}}};
  m.out = {{{"out", "nop"}, {{to("idle", self)}}},
           {{"out", "approach"}, {{to("appr", self)}}},
           {{"tun_needed", "request"}, {{to(try_i, "ctrl")}}},
           {{"granted", "enter"}, {{to("enter", self)}}},
           {{"in", "nop"}, {{to("idle", self)}}},
           {{"in", "leave"}, {{to("left", "ctrl"), to("left", self)}}}};
  m.in_list.entries = {
      entry(AND({S("out"), H("appr")}), {"appr"}),
      entry(AND({S("tun_needed"), H("grant")}), {"granted"}),
      entry(S("tun_needed"), {"retry"}),
      entry(AND({S("granted"), H("enter")}), {"granted"}),
      entry(AND({S("in"), H("left")}), {"left"}),
      entry(TRUE(), {"idle"}),
  };
  m.trans = {{{"out", "nop", "idle"}, {"out"}},
             {{"out", "approach", "appr"}, {"tun_needed"}},
             {{"tun_needed", "request", "retry"}, {"tun_needed"}},
             {{"tun_needed", "request", "granted"}, {"granted"}},
             {{"granted", "enter", "enter"}, {"in"}},
             {{"granted", "enter", "granted"}, {"in"}},
             {{"in", "nop", "idle"}, {"in"}},
             {{"in", "leave", "left"}, {"out"}}};
  m.props = {"in_tunnel_" + num(i)};
  m.valuation = {{"in_tunnel_" + num(i), {"in"}}};
  return m;
}

Module ttc_controller_module(int n, bool sabotaged) {
  Module m;
  m.name = "m";
  m.states = {"tun_free", "infd"};
  m.init = {"tun_free"};
  m.avail = {{"tun_free", {"accepting"}}, {"infd", {"waiting"}}};
  m.out = {{{"tun_free", "accepting"}, {{bcast("aw_reqs")}}},
           {{"infd", "waiting"}, {{to("aw_leave", "ctrl")}}}};
  for (int i = 1; i <= n; ++i) {
    Name g = "tr_" + num(i) + "granted";
    m.states.insert(g);
    m.avail[g] = {"inform"};
    m.out[{g, "inform"}] = {{to("grant", "tr_" + num(i))}};
  }
  for (int i = 1; i <= n; ++i)
    m.in_list.entries.push_back(
        entry(AND({S("tun_free"), H("try_" + num(i))}), {"grant_" + num(i)}));
  m.in_list.entries.push_back(entry(S("tun_free"), {"no_reqs"}));
  {
    std::vector<Condition> granted_states;
    for (int i = 1; i <= n; ++i)
      granted_states.push_back(S("tr_" + num(i) + "granted"));
    m.in_list.entries.push_back(entry(OR(std::move(granted_states)), {"infd"}));
  }
  m.in_list.entries.push_back(entry(AND({S("infd"), H("left")}), {"ack_release"}));
  m.in_list.entries.push_back(entry(S("infd"), {"aw_leave"}));
  m.in_list.entries.push_back(entry(TRUE(), {"idle"}));
  m.trans = {{{"tun_free", "accepting", "no_reqs"}, {"tun_free"}},
             {{"infd", "waiting", "ack_release"}, {"tun_free"}},
             {{"infd", "waiting", "aw_leave"}, {sabotaged ? "tun_free" : "infd"}}};
  for (int i = 1; i <= n; ++i) {
    Name g = "tr_" + num(i) + "granted";
    m.trans[{"tun_free", "accepting", "grant_" + num(i)}] = {g};
    m.trans[{g, "inform", "infd"}] = {"infd"};
  }
  m.props = {"tunnel_busy"};
  m.valuation = {{"tunnel_busy", {"infd"}}};
  return m;
}

Mis ttc_impl(int n, bool sabotaged) {
  if (n < 1) throw std::invalid_argument("ttc: n must be >= 1");
  Mis m;
  Agent ctrl;
  ctrl.id = "ctrl";
  ctrl.modules.push_back(ttc_controller_module(n, sabotaged));
  m.insert_agent(std::move(ctrl));
  for (int i = 1; i <= n; ++i) {
    Agent tr;
    tr.id = "tr_" + num(i);
    tr.modules.push_back(ttc_train_module(i));
    m.insert_agent(std::move(tr));
  }
  finish_alphabets(m);
  return m;
}

// ----------------------------------------------------------- dc1 / dc2 ----

Name crypto(int i) { return "C_" + num(i); }

int left_of(int i, int n) { return i == 1 ? n : i - 1; }
int right_of(int i, int n) { return i == n ? 1 : i + 1; }

Module dc_whopays_pick(int n) {
  Module m;
  m.name = "pick";
  m.states = {"start", "paid_done", "none_done"};
  m.init = {"start"};
  m.avail = {{"start", {"choose"}},
             {"paid_done", {"rest"}},
             {"none_done", {"rest"}}};
  std::set<TokenSet> choice;
  for (int i = 0; i <= n; ++i)
    choice.insert({to("you_pay_" + num(i), "WhoPays")});
  m.out[{"start", "choose"}] = std::move(choice);
  m.out[{"paid_done", "rest"}] = {{}};
  m.out[{"none_done", "rest"}] = {{}};
  for (int i = 0; i <= n; ++i) {
    Name pay = "pay_" + num(i);
    m.states.insert(pay);
    m.avail[pay] = {"inform"};
    if (i == 0) m.out[{pay, "inform"}] = {{}};
    else m.out[{pay, "inform"}] = {{to("you_pay_" + num(i), crypto(i))}};
  }
  for (int i = 0; i <= n; ++i)
    m.in_list.entries.push_back(
        entry(AND({S("start"), H("you_pay_" + num(i))}), {"you_pay_" + num(i)}));
  for (int i = 0; i <= n; ++i)
    m.in_list.entries.push_back(
        entry(AND({S("pay_" + num(i)), H("got_it")}), {"got_it"}));
  m.in_list.entries.push_back(entry(TRUE(), {"idle"}));
  for (int i = 0; i <= n; ++i) {
    Name pay = "pay_" + num(i);
    m.trans[{"start", "choose", "you_pay_" + num(i)}] = {pay};
    m.trans[{pay, "inform", "idle"}] = {pay};
    m.trans[{pay, "inform", "got_it"}] = {i == 0 ? Name("none_done") : Name("paid_done")};
  }
  m.trans[{"paid_done", "rest", "idle"}] = {"paid_done"};
  m.trans[{"none_done", "rest", "idle"}] = {"none_done"};
  m.props = {"paid_by_crypto", "wp_done"};
  m.valuation = {{"paid_by_crypto", {"paid_done"}},
                 {"wp_done", {"paid_done", "none_done"}}};
  return m;
}

Module dc_whopays_sync() {
  Module m;
  m.name = "sync";
  m.states = {"r0", "r1", "r2", "r3"};
  m.init = {"r0"};
  for (const Name& q : m.states) m.avail[q] = {"tick"};
  m.out = {{{"r0", "tick"}, {{}}},
           {{"r1", "tick"}, {{}}},
           {{"r2", "tick"}, {{bcast("resolved")}}},
           {{"r3", "tick"}, {{}}}};
  m.in_list.entries = {entry(TRUE(), {"idle"})};
  m.trans = {{{"r0", "tick", "idle"}, {"r1"}},
             {{"r1", "tick", "idle"}, {"r2"}},
             {{"r2", "tick", "idle"}, {"r3"}},
             {{"r3", "tick", "idle"}, {"r3"}}};
  return m;
}

// The shared tally structure; props parameterised so it can also serve as
// the per-cryptographer tally in dc2.
Module dc_tally_module(int n, const Name& module_name, const Name& odd_prop,
                       const Name& done_prop) {
  Module m;
  m.name = module_name;
  m.states = {"ev", "od", "pub_e", "pub_o"};
  m.init = {"ev"};
  for (const Name& q : m.states) m.avail[q] = {"count"};
  for (const Name& q : m.states) m.out[{q, "count"}] = {{}};
  for (int i = 1; i <= n; ++i) {
    m.in_list.entries.push_back(entry(H("u_diff_" + num(i)), {"flip"}));
    m.in_list.entries.push_back(entry(H("u_eq_" + num(i)), {"noflip"}));
  }
  m.in_list.entries.push_back(entry(H("all_uttered"), {"publish"}));
  m.in_list.entries.push_back(entry(TRUE(), {"idle"}));
  m.trans = {{{"ev", "count", "flip"}, {"od"}},
             {{"ev", "count", "noflip"}, {"ev"}},
             {{"ev", "count", "publish"}, {"pub_e"}},
             {{"ev", "count", "idle"}, {"ev"}},
             {{"od", "count", "flip"}, {"ev"}},
             {{"od", "count", "noflip"}, {"od"}},
             {{"od", "count", "publish"}, {"pub_o"}},
             {{"od", "count", "idle"}, {"od"}},
             {{"pub_e", "count", "publish"}, {"pub_e"}},
             {{"pub_e", "count", "idle"}, {"pub_e"}},
             {{"pub_o", "count", "publish"}, {"pub_o"}},
             {{"pub_o", "count", "idle"}, {"pub_o"}}};
  m.props = {odd_prop, done_prop};
  m.valuation = {{odd_prop, {"pub_o"}}, {done_prop, {"pub_e", "pub_o"}}};
  return m;
}

Module dc_crypto_main(int i, int n) {
  Name left = num(left_of(i, n));
  Module m;
  m.name = "c";
  m.init = {"w"};
  bool first = i == 1;

  m.states = {"w", "coin_h", "coin_t", "s_eq", "s_df", "pe_u", "pd_u", "ne_u",
              "nd_u", "done_pe", "done_pd", "done_ne", "done_nd"};
  if (first) {
    for (const Name& q : {"fin_pe", "fin_pd", "fin_ne", "fin_nd"}) m.states.insert(q);
  } else {
    for (const Name& q : {"pe", "pd", "ne", "nd"}) m.states.insert(q);
  }

  m.avail["w"] = {"toss"};
  m.avail["coin_h"] = {"tell"};
  m.avail["coin_t"] = {"tell"};
  m.avail["s_eq"] = {"listen"};
  m.avail["s_df"] = {"listen"};
  for (const Name& q : {"pe_u", "pd_u", "ne_u", "nd_u"}) m.avail[q] = {"utter"};
  for (const Name& q : {"done_pe", "done_pd", "done_ne", "done_nd"})
    m.avail[q] = {"rest"};
  if (first) {
    for (const Name& q : {"fin_pe", "fin_pd", "fin_ne", "fin_nd"})
      m.avail[q] = {"rest"};
  } else {
    for (const Name& q : {"pe", "pd", "ne", "nd"}) m.avail[q] = {"wait"};
  }

  // The coin value is a nondeterministic local transition; all emissions
  // are deterministic, so every receiver sees the same coin.
  m.out[{"w", "toss"}] = {{}};
  m.out[{"coin_h", "tell"}] = {{to("h_" + num(i), crypto(right_of(i, n)))}};
  m.out[{"coin_t", "tell"}] = {{to("t_" + num(i), crypto(right_of(i, n)))}};
  m.out[{"s_eq", "listen"}] = {{to("got_it", "WhoPays")}};
  m.out[{"s_df", "listen"}] = {{to("got_it", "WhoPays")}};
  Name self = crypto(i);
  m.out[{"pe_u", "utter"}] = {{to("say_d", self)}};
  m.out[{"pd_u", "utter"}] = {{to("say_e", self)}};
  m.out[{"ne_u", "utter"}] = {{to("say_e", self)}};
  m.out[{"nd_u", "utter"}] = {{to("say_d", self)}};
  for (const Name& q : {"done_pe", "done_pd", "done_ne", "done_nd"})
    m.out[{q, "rest"}] = {{}};
  if (first) {
    for (const Name& q : {"fin_pe", "fin_pd", "fin_ne", "fin_nd"})
      m.out[{q, "rest"}] = {{bcast("all_uttered")}};
  } else {
    for (const Name& q : {"pe", "pd", "ne", "nd"}) m.out[{q, "wait"}] = {{}};
  }

  m.in_list.entries.push_back(
      entry(AND({S("coin_h"), H("h_" + left)}), {"see_same"}));
  m.in_list.entries.push_back(entry(S("coin_h"), {"see_diff"}));
  m.in_list.entries.push_back(
      entry(AND({S("coin_t"), H("t_" + left)}), {"see_same"}));
  m.in_list.entries.push_back(entry(S("coin_t"), {"see_diff"}));
  m.in_list.entries.push_back(
      entry(AND({S("s_eq"), H("you_pay_" + num(i))}), {"mine"}));
  m.in_list.entries.push_back(entry(AND({S("s_eq"), H("resolved")}), {"not_mine"}));
  m.in_list.entries.push_back(
      entry(AND({S("s_df"), H("you_pay_" + num(i))}), {"mine"}));
  m.in_list.entries.push_back(entry(AND({S("s_df"), H("resolved")}), {"not_mine"}));
  if (first) {
    for (const Name& q : {"done_pe", "done_pd", "done_ne", "done_nd"})
      m.in_list.entries.push_back(entry(AND({S(q), H("turn")}), {"go"}));
  } else {
    for (const Name& q : {"pe", "pd", "ne", "nd"})
      m.in_list.entries.push_back(entry(AND({S(q), H("turn")}), {"go"}));
  }
  m.in_list.entries.push_back(entry(TRUE(), {"idle"}));

  m.trans[{"w", "toss", "idle"}] = {"coin_h", "coin_t"};
  m.trans[{"coin_h", "tell", "see_same"}] = {"s_eq"};
  m.trans[{"coin_h", "tell", "see_diff"}] = {"s_df"};
  m.trans[{"coin_t", "tell", "see_same"}] = {"s_eq"};
  m.trans[{"coin_t", "tell", "see_diff"}] = {"s_df"};
  m.trans[{"s_eq", "listen", "idle"}] = {"s_eq"};
  m.trans[{"s_df", "listen", "idle"}] = {"s_df"};
  if (first) {
    m.trans[{"s_eq", "listen", "mine"}] = {"pe_u"};
    m.trans[{"s_eq", "listen", "not_mine"}] = {"ne_u"};
    m.trans[{"s_df", "listen", "mine"}] = {"pd_u"};
    m.trans[{"s_df", "listen", "not_mine"}] = {"nd_u"};
  } else {
    m.trans[{"s_eq", "listen", "mine"}] = {"pe"};
    m.trans[{"s_eq", "listen", "not_mine"}] = {"ne"};
    m.trans[{"s_df", "listen", "mine"}] = {"pd"};
    m.trans[{"s_df", "listen", "not_mine"}] = {"nd"};
    for (const Name& q : {"pe", "pd", "ne", "nd"}) {
      m.trans[{q, "wait", "go"}] = {q + "_u"};
      m.trans[{q, "wait", "idle"}] = {q};
    }
  }
  for (const Name& q : {"pe", "pd", "ne", "nd"})
    m.trans[{q + "_u", "utter", "idle"}] = {"done_" + q};
  for (const Name& q : {"done_pe", "done_pd", "done_ne", "done_nd"})
    m.trans[{q, "rest", "idle"}] = {q};
  if (first) {
    for (const Name& q : {"pe", "pd", "ne", "nd"}) {
      m.trans[{"done_" + q, "rest", "go"}] = {"fin_" + q};
      m.trans[{"fin_" + q, "rest", "idle"}] = {"fin_" + q};
    }
  }

  Name paid = "paid_" + num(i);
  Name ueq = "uttered_equal_" + num(i);
  Name done = "done_" + num(i);
  m.props = {paid, ueq, done};
  std::set<Name> paid_states = {"done_pe", "done_pd"};
  std::set<Name> ueq_states = {"done_pd", "done_ne"};
  std::set<Name> done_states = {"done_pe", "done_pd", "done_ne", "done_nd"};
  if (first) {
    paid_states.insert({"fin_pe", "fin_pd"});
    ueq_states.insert({"fin_pd", "fin_ne"});
    done_states.insert({"fin_pe", "fin_pd", "fin_ne", "fin_nd"});
  }
  m.valuation = {{paid, paid_states}, {ueq, ueq_states}, {done, done_states}};
  return m;
}

Module dc_crypto_utter(int i, int n, bool channels) {
  Name self = crypto(i);
  Module m;
  m.name = "utt";
  m.states = {"uw", "ue", "ud", "u_done"};
  m.init = {"uw"};
  for (const Name& q : m.states) m.avail[q] = {"speak"};
  m.out[{"uw", "speak"}] = {{}};
  m.out[{"u_done", "speak"}] = {{}};
  if (channels) {
    TokenSet eq, df;
    eq.insert(to("u_eq_" + num(i), "Counter"));
    df.insert(to("u_diff_" + num(i), "Counter"));
    for (int j = 1; j <= n; ++j) {
      eq.insert(to("u_eq_" + num(i), crypto(j)));
      df.insert(to("u_diff_" + num(i), crypto(j)));
    }
    m.out[{"ue", "speak"}] = {eq};
    m.out[{"ud", "speak"}] = {df};
  } else {
    m.out[{"ue", "speak"}] = {{bcast("u_eq_" + num(i))}};
    m.out[{"ud", "speak"}] = {{bcast("u_diff_" + num(i))}};
  }
  m.in_list.entries = {entry(AND({S("uw"), H("say_e")}), {"pick_e"}),
                       entry(AND({S("uw"), H("say_d")}), {"pick_d"}),
                       entry(TRUE(), {"idle"})};
  (void)self;
  m.trans = {{{"uw", "speak", "pick_e"}, {"ue"}},
             {{"uw", "speak", "pick_d"}, {"ud"}},
             {{"uw", "speak", "idle"}, {"uw"}},
             {{"ue", "speak", "idle"}, {"u_done"}},
             {{"ud", "speak", "idle"}, {"u_done"}},
             {{"u_done", "speak", "idle"}, {"u_done"}}};
  return m;
}

Module dc_crypto_relay(int i, int n) {
  Module m;
  m.name = "relay";
  m.states = {"rw", "rgo", "rdone"};
  m.init = {"rw"};
  for (const Name& q : m.states) m.avail[q] = {"spin"};
  m.out = {{{"rw", "spin"}, {{}}},
           {{"rgo", "spin"}, {{to("turn", crypto(right_of(i, n)))}}},
           {{"rdone", "spin"}, {{}}}};
  m.in_list.entries = {entry(AND({S("rw"), H("u_eq_" + num(i))}), {"fire"}),
                       entry(AND({S("rw"), H("u_diff_" + num(i))}), {"fire"}),
                       entry(TRUE(), {"idle"})};
  m.trans = {{{"rw", "spin", "fire"}, {"rgo"}},
             {{"rw", "spin", "idle"}, {"rw"}},
             {{"rgo", "spin", "idle"}, {"rdone"}},
             {{"rdone", "spin", "idle"}, {"rdone"}}};
  return m;
}

Agent dc_crypto_agent(int i, int n, bool channels) {
  Agent a;
  a.id = crypto(i);
  a.modules.push_back(dc_crypto_main(i, n));
  a.modules.push_back(dc_crypto_utter(i, n, channels));
  a.modules.push_back(dc_crypto_relay(i, n));
  if (channels)
    a.modules.push_back(dc_tally_module(n, "cnt", "result_odd_" + num(i),
                                        "tally_done_" + num(i)));
  return a;
}

Mis dc_impl(int n, bool channels) {
  if (n < 2) throw std::invalid_argument("dc1/dc2: n must be >= 2");
  Mis m;
  Agent wp;
  wp.id = "WhoPays";
  wp.modules.push_back(dc_whopays_pick(n));
  wp.modules.push_back(dc_whopays_sync());
  m.insert_agent(std::move(wp));
  Agent counter;
  counter.id = "Counter";
  counter.modules.push_back(dc_tally_module(n, "main", "outcome_odd", "counter_done"));
  m.insert_agent(std::move(counter));
  for (int i = 1; i <= n; ++i) m.insert_agent(dc_crypto_agent(i, n, channels));
  finish_alphabets(m);
  return m;
}

// ------------------------------------------------------------------ dc0 ----

Module dc0_pay_module(int i) {
  Name self = crypto(i);
  Module m;
  m.name = "pay";
  m.states = {"d0", "dy", "dn", "ds", "dns", "fp", "fn"};
  m.init = {"d0"};
  m.avail = {{"d0", {"declare"}}, {"dy", {"submit"}}, {"dn", {"submit"}},
             {"ds", {"await"}},   {"dns", {"await"}}, {"fp", {"loop"}},
             {"fn", {"loop"}}};
  // The pay/don't-pay choice is a local transition; the submission itself
  // is deterministic, and a ballot marker lets the oracle know a round of
  // declarations has arrived.
  m.out = {{{"d0", "declare"}, {{}}},
           {{"dy", "submit"}, {{to("ballot", "Oracle"), to("want_pay", "Oracle")}}},
           {{"dn", "submit"}, {{to("ballot", "Oracle")}}},
           {{"ds", "await"}, {{}}},
           {{"dns", "await"}, {{}}},
           {{"fp", "loop"}, {{to("pays", self)}}},
           {{"fn", "loop"}, {{}}}};
  m.in_list.entries = {entry(AND({S("ds"), H("confirmed")}), {"fixed"}),
                       entry(AND({S("ds"), H("retry")}), {"again"}),
                       entry(AND({S("dns"), H("confirmed")}), {"fixed"}),
                       entry(AND({S("dns"), H("retry")}), {"again"}),
                       entry(TRUE(), {"idle"})};
  m.trans = {{{"d0", "declare", "idle"}, {"dy", "dn"}},
             {{"dy", "submit", "idle"}, {"ds"}},
             {{"dn", "submit", "idle"}, {"dns"}},
             {{"ds", "await", "fixed"}, {"fp"}},
             {{"ds", "await", "again"}, {"d0"}},
             {{"ds", "await", "idle"}, {"ds"}},
             {{"dns", "await", "fixed"}, {"fn"}},
             {{"dns", "await", "again"}, {"d0"}},
             {{"dns", "await", "idle"}, {"dns"}},
             {{"fp", "loop", "idle"}, {"fp"}},
             {{"fn", "loop", "idle"}, {"fn"}}};
  m.props = {"paid_" + num(i)};
  m.valuation = {{"paid_" + num(i), {"fp"}}};
  return m;
}

Module dc0_crypto_module(int i) {
  Module m;
  m.name = "c";
  m.states = {"w",    "pick", "u0_h", "u0_t", "A_h",  "A_t",
              "L_hh", "L_ht", "L_th", "L_tt", "B_eq", "B_df",
              "U_e",  "U_d",  "done_e", "done_d"};
  m.init = {"w"};
  m.avail["w"] = {"phase"};
  m.avail["pick"] = {"flip"};
  for (const Name& q : {"u0_h", "u0_t"}) m.avail[q] = {"announce", "listen", "hold"};
  for (const Name& q : {"A_h", "A_t"}) m.avail[q] = {"listen", "hold"};
  for (const Name& q : {"L_hh", "L_ht", "L_th", "L_tt"})
    m.avail[q] = {"announce", "hold"};
  for (const Name& q : {"B_eq", "B_df"}) m.avail[q] = {"sync"};
  for (const Name& q : {"U_e", "U_d"}) m.avail[q] = {"utter", "hold"};
  for (const Name& q : {"done_e", "done_d"}) m.avail[q] = {"rest"};

  // Coin values come from the local `flip` transition, so announcements are
  // deterministic: everyone hears the same coin in a successful round.
  std::set<TokenSet> announce_h = {{bcast("ann"), bcast("ann_h")}};
  std::set<TokenSet> announce_t = {{bcast("ann"), bcast("ann_t")}};
  m.out[{"w", "phase"}] = {{}};
  m.out[{"pick", "flip"}] = {{}};
  m.out[{"u0_h", "announce"}] = announce_h;
  m.out[{"u0_t", "announce"}] = announce_t;
  m.out[{"L_hh", "announce"}] = announce_h;
  m.out[{"L_ht", "announce"}] = announce_h;
  m.out[{"L_th", "announce"}] = announce_t;
  m.out[{"L_tt", "announce"}] = announce_t;
  for (const Name& q : {"u0_h", "u0_t", "A_h", "A_t"})
    m.out[{q, "listen"}] = {{bcast("lst")}};
  for (const Name& q : {"u0_h", "u0_t", "A_h", "A_t", "L_hh", "L_ht", "L_th",
                        "L_tt", "U_e", "U_d"})
    m.out[{q, "hold"}] = {{}};
  for (const Name& q : {"B_eq", "B_df"}) m.out[{q, "sync"}] = {{}};
  m.out[{"U_e", "utter"}] = {{bcast("utt"), bcast("u_eq")}};
  m.out[{"U_d", "utter"}] = {{bcast("utt"), bcast("u_diff")}};
  for (const Name& q : {"done_e", "done_d"}) m.out[{q, "rest"}] = {{}};

  auto round_entry = [&](const Name& q, const Name& coin, const Name& imp) {
    std::vector<Condition> cs = {S(q), Condition::count("ann", Cmp::Eq, 1),
                                 Condition::count("lst", Cmp::Eq, 1), H(coin)};
    return entry(AND(std::move(cs)), {imp});
  };
  m.in_list.entries.push_back(entry(AND({S("w"), H("confirmed")}), {"begin"}));
  for (const Name& q :
       {"u0_h", "u0_t", "A_h", "A_t", "L_hh", "L_ht", "L_th", "L_tt"}) {
    m.in_list.entries.push_back(round_entry(q, "ann_h", "ok_h"));
    m.in_list.entries.push_back(round_entry(q, "ann_t", "ok_t"));
  }
  for (const Name& q : {"B_eq", "B_df"})
    m.in_list.entries.push_back(entry(AND({S(q), H("pays")}), {"own_pay"}));
  for (const Name& q : {"U_e", "U_d"})
    m.in_list.entries.push_back(
        entry(AND({S(q), Condition::count("utt", Cmp::Eq, 1)}), {"sole"}));
  m.in_list.entries.push_back(entry(TRUE(), {"idle"}));

  m.trans[{"w", "phase", "begin"}] = {"pick"};
  m.trans[{"w", "phase", "idle"}] = {"w"};
  m.trans[{"pick", "flip", "idle"}] = {"u0_h", "u0_t"};
  m.trans[{"u0_h", "announce", "ok_h"}] = {"A_h"};
  m.trans[{"u0_h", "announce", "idle"}] = {"u0_h"};
  m.trans[{"u0_t", "announce", "ok_t"}] = {"A_t"};
  m.trans[{"u0_t", "announce", "idle"}] = {"u0_t"};
  m.trans[{"u0_h", "listen", "ok_h"}] = {"L_hh"};
  m.trans[{"u0_h", "listen", "ok_t"}] = {"L_ht"};
  m.trans[{"u0_h", "listen", "idle"}] = {"u0_h"};
  m.trans[{"u0_t", "listen", "ok_h"}] = {"L_th"};
  m.trans[{"u0_t", "listen", "ok_t"}] = {"L_tt"};
  m.trans[{"u0_t", "listen", "idle"}] = {"u0_t"};
  m.trans[{"A_h", "listen", "ok_h"}] = {"B_eq"};
  m.trans[{"A_h", "listen", "ok_t"}] = {"B_df"};
  m.trans[{"A_h", "listen", "idle"}] = {"A_h"};
  m.trans[{"A_t", "listen", "ok_h"}] = {"B_df"};
  m.trans[{"A_t", "listen", "ok_t"}] = {"B_eq"};
  m.trans[{"A_t", "listen", "idle"}] = {"A_t"};
  m.trans[{"L_hh", "announce", "ok_h"}] = {"B_eq"};
  m.trans[{"L_hh", "announce", "idle"}] = {"L_hh"};
  m.trans[{"L_ht", "announce", "ok_h"}] = {"B_df"};
  m.trans[{"L_ht", "announce", "idle"}] = {"L_ht"};
  m.trans[{"L_th", "announce", "ok_t"}] = {"B_df"};
  m.trans[{"L_th", "announce", "idle"}] = {"L_th"};
  m.trans[{"L_tt", "announce", "ok_t"}] = {"B_eq"};
  m.trans[{"L_tt", "announce", "idle"}] = {"L_tt"};
  for (const Name& q : {"u0_h", "u0_t", "A_h", "A_t", "L_hh", "L_ht", "L_th",
                        "L_tt"})
    for (const Name& g : {"ok_h", "ok_t", "idle"}) m.trans[{q, "hold", g}] = {q};
  // equal coins -> say "different" exactly when this agent paid
  m.trans[{"B_eq", "sync", "own_pay"}] = {"U_d"};
  m.trans[{"B_eq", "sync", "idle"}] = {"U_e"};
  m.trans[{"B_df", "sync", "own_pay"}] = {"U_e"};
  m.trans[{"B_df", "sync", "idle"}] = {"U_d"};
  for (const Name& q : {"U_e", "U_d"}) {
    Name done = q == "U_e" ? "done_e" : "done_d";
    m.trans[{q, "utter", "sole"}] = {done};
    m.trans[{q, "utter", "idle"}] = {q};
    m.trans[{q, "hold", "sole"}] = {q};
    m.trans[{q, "hold", "idle"}] = {q};
  }
  for (const Name& q : {"done_e", "done_d"}) m.trans[{q, "rest", "idle"}] = {q};

  m.props = {"done_" + num(i), "uttered_equal_" + num(i)};
  m.valuation = {{"done_" + num(i), {"done_e", "done_d"}},
                 {"uttered_equal_" + num(i), {"done_e"}}};
  return m;
}

Module dc0_oracle_module() {
  Module m;
  m.name = "judge";
  m.states = {"listen", "ok_a", "retry_a", "finis"};
  m.init = {"listen"};
  m.avail = {{"listen", {"judge"}},
             {"ok_a", {"announce"}},
             {"retry_a", {"announce"}},
             {"finis", {"rest"}}};
  m.out = {{{"listen", "judge"}, {{}}},
           {{"ok_a", "announce"}, {{bcast("confirmed")}}},
           {{"retry_a", "announce"}, {{bcast("retry")}}},
           {{"finis", "rest"}, {{}}}};
  // Ballots mark the arrival of a declaration round; without one the oracle
  // keeps waiting.
  m.in_list.entries = {
      entry(AND({S("listen"), Condition::count("ballot", Cmp::Ge, 1),
                 Condition::count("want_pay", Cmp::Ge, 2)}),
            {"bad"}),
      entry(AND({S("listen"), Condition::count("ballot", Cmp::Ge, 1)}), {"good"}),
      entry(TRUE(), {"idle"})};
  m.trans = {{{"listen", "judge", "bad"}, {"retry_a"}},
             {{"listen", "judge", "good"}, {"ok_a"}},
             {{"listen", "judge", "idle"}, {"listen"}},
             {{"retry_a", "announce", "idle"}, {"listen"}},
             {{"ok_a", "announce", "idle"}, {"finis"}},
             {{"finis", "rest", "idle"}, {"finis"}}};
  return m;
}

Module dc0_tally_module() {
  Module m;
  m.name = "tally";
  m.states = {"ev", "od"};
  m.init = {"ev"};
  m.avail = {{"ev", {"count"}}, {"od", {"count"}}};
  m.out = {{{"ev", "count"}, {{}}}, {{"od", "count"}, {{}}}};
  m.in_list.entries = {
      entry(AND({Condition::count("utt", Cmp::Eq, 1), H("u_diff")}), {"flip"}),
      entry(TRUE(), {"idle"})};
  m.trans = {{{"ev", "count", "flip"}, {"od"}},
             {{"ev", "count", "idle"}, {"ev"}},
             {{"od", "count", "flip"}, {"ev"}},
             {{"od", "count", "idle"}, {"od"}}};
  m.props = {"outcome_odd"};
  m.valuation = {{"outcome_odd", {"od"}}};
  return m;
}

Mis dc0_impl(int n) {
  if (n < 2) throw std::invalid_argument("dc0: n must be >= 2");
  Mis m;
  Agent oracle;
  oracle.id = "Oracle";
  oracle.modules.push_back(dc0_oracle_module());
  m.insert_agent(std::move(oracle));
  Agent counter;
  counter.id = "Counter";
  counter.modules.push_back(dc0_tally_module());
  m.insert_agent(std::move(counter));
  for (int i = 1; i <= n; ++i) {
    Agent a;
    a.id = crypto(i);
    a.modules.push_back(dc0_pay_module(i));
    a.modules.push_back(dc0_crypto_module(i));
    m.insert_agent(std::move(a));
  }
  finish_alphabets(m);
  return m;
}

// --------------------------------------------------------------- plans ----

ExpansionPlan ttc_plan(int n) {
  ExpansionPlan p;
  Agent fresh;
  fresh.id = "tr_" + num(n + 1);
  fresh.modules.push_back(ttc_train_module(n + 1));
  p.fresh = std::move(fresh);

  Name g = "tr_" + num(n + 1) + "granted";
  Name tr = "tr_" + num(n + 1);
  EditScript& s = p.script;
  s.steps.push_back(AddState{"ctrl", "m", g});
  s.steps.push_back(AddAvail{"ctrl", "m", g, "inform"});
  s.steps.push_back(
      AddOutAlternative{"ctrl", "m", {g, "inform"}, {to("grant", tr)}});
  s.steps.push_back(InsertDecisionEntry{
      "ctrl", "m", static_cast<std::size_t>(n),
      entry(AND({S("tun_free"), H("try_" + num(n + 1))}), {"grant_" + num(n + 1)})});
  // the "some train granted" disjunction (now at index n+2) gains the new state
  s.steps.push_back(AddGuardAtom{"ctrl", "m", static_cast<std::size_t>(n + 2), S(g),
                                 /*disjunct=*/true});
  s.steps.push_back(AddTransTarget{"ctrl", "m", {"tun_free", "accepting"},
                                   "grant_" + num(n + 1), g});
  s.steps.push_back(AddTransTarget{"ctrl", "m", {g, "inform"}, "infd", "infd"});
  return p;
}

// Neighbour re-linking shared by dc1 and dc2: C_1 watches the new left
// neighbour's coin, C_n's coin and turn tokens move to the new agent.
void dc_neighbour_steps(EditScript& s, int n) {
  Name last = num(n), fresh = num(n + 1);
  s.steps.push_back(RemoveGuardAtom{"C_1", "c", 0, H("h_" + last)});
  s.steps.push_back(AddGuardAtom{"C_1", "c", 0, H("h_" + fresh), false});
  s.steps.push_back(RemoveGuardAtom{"C_1", "c", 2, H("t_" + last)});
  s.steps.push_back(AddGuardAtom{"C_1", "c", 2, H("t_" + fresh), false});

  Name cn = crypto(n), cnew = crypto(n + 1);
  s.steps.push_back(RemoveOutToken{cn, "c", {"coin_h", "tell"},
                                   {to("h_" + last, "C_1")}, to("h_" + last, "C_1")});
  s.steps.push_back(
      AddOutToken{cn, "c", {"coin_h", "tell"}, {}, to("h_" + last, cnew)});
  s.steps.push_back(RemoveOutToken{cn, "c", {"coin_t", "tell"},
                                   {to("t_" + last, "C_1")}, to("t_" + last, "C_1")});
  s.steps.push_back(
      AddOutToken{cn, "c", {"coin_t", "tell"}, {}, to("t_" + last, cnew)});

  s.steps.push_back(RemoveOutToken{cn, "relay", {"rgo", "spin"},
                                   {to("turn", "C_1")}, to("turn", "C_1")});
  s.steps.push_back(AddOutToken{cn, "relay", {"rgo", "spin"}, {}, to("turn", cnew)});
}

void dc_whopays_steps(EditScript& s, int n) {
  Name i = num(n + 1);
  Name pay = "pay_" + i;
  s.steps.push_back(AddState{"WhoPays", "pick", pay});
  s.steps.push_back(AddAvail{"WhoPays", "pick", pay, "inform"});
  s.steps.push_back(AddOutAlternative{"WhoPays", "pick", {"start", "choose"},
                                      {to("you_pay_" + i, "WhoPays")}});
  s.steps.push_back(AddOutAlternative{"WhoPays", "pick", {pay, "inform"},
                                      {to("you_pay_" + i, crypto(n + 1))}});
  s.steps.push_back(InsertDecisionEntry{
      "WhoPays", "pick", static_cast<std::size_t>(n + 1),
      entry(AND({S("start"), H("you_pay_" + i)}), {"you_pay_" + i})});
  s.steps.push_back(InsertDecisionEntry{
      "WhoPays", "pick", static_cast<std::size_t>(2 * n + 3),
      entry(AND({S(pay), H("got_it")}), {"got_it"})});
  s.steps.push_back(AddTransTarget{"WhoPays", "pick", {"start", "choose"},
                                   "you_pay_" + i, pay});
  s.steps.push_back(AddTransTarget{"WhoPays", "pick", {pay, "inform"}, "idle", pay});
  s.steps.push_back(
      AddTransTarget{"WhoPays", "pick", {pay, "inform"}, "got_it", "paid_done"});
}

void dc_tally_steps(EditScript& s, const Name& agent, const Name& module, int n) {
  Name i = num(n + 1);
  s.steps.push_back(InsertDecisionEntry{agent, module,
                                        static_cast<std::size_t>(2 * n),
                                        entry(H("u_diff_" + i), {"flip"})});
  s.steps.push_back(InsertDecisionEntry{agent, module,
                                        static_cast<std::size_t>(2 * n + 1),
                                        entry(H("u_eq_" + i), {"noflip"})});
}

ExpansionPlan dc1_plan(int n) {
  ExpansionPlan p;
  p.fresh = dc_crypto_agent(n + 1, n + 1, /*channels=*/false);
  dc_neighbour_steps(p.script, n);
  dc_whopays_steps(p.script, n);
  dc_tally_steps(p.script, "Counter", "main", n);
  return p;
}

ExpansionPlan dc2_plan(int n) {
  ExpansionPlan p;
  p.fresh = dc_crypto_agent(n + 1, n + 1, /*channels=*/true);
  dc_neighbour_steps(p.script, n);
  dc_whopays_steps(p.script, n);
  dc_tally_steps(p.script, "Counter", "main", n);
  for (int j = 1; j <= n; ++j) {
    TokenSet eq, df;
    eq.insert(to("u_eq_" + num(j), "Counter"));
    df.insert(to("u_diff_" + num(j), "Counter"));
    for (int k = 1; k <= n; ++k) {
      eq.insert(to("u_eq_" + num(j), crypto(k)));
      df.insert(to("u_diff_" + num(j), crypto(k)));
    }
    p.script.steps.push_back(AddOutToken{crypto(j), "utt", {"ue", "speak"}, eq,
                                         to("u_eq_" + num(j), crypto(n + 1))});
    p.script.steps.push_back(AddOutToken{crypto(j), "utt", {"ud", "speak"}, df,
                                         to("u_diff_" + num(j), crypto(n + 1))});
    dc_tally_steps(p.script, crypto(j), "cnt", n);
  }
  return p;
}

ExpansionPlan dc0_plan(int n) {
  ExpansionPlan p;
  Agent a;
  a.id = crypto(n + 1);
  a.modules.push_back(dc0_pay_module(n + 1));
  a.modules.push_back(dc0_crypto_module(n + 1));
  p.fresh = std::move(a);
  return p;  // empty script: the family is identifier-free
}

}  // namespace

Mis ttc(int n) { return ttc_impl(n, false); }
Mis ttc_sabotaged(int n) { return ttc_impl(n, true); }
Mis dc1(int n) { return dc_impl(n, false); }
Mis dc2(int n) { return dc_impl(n, true); }
Mis dc0(int n) { return dc0_impl(n); }

std::vector<std::string> family_names() { return {"ttc", "dc1", "dc2", "dc0"}; }

bool has_family(const std::string& name) {
  for (const std::string& f : family_names())
    if (f == name) return true;
  return false;
}

Mis family(const std::string& name, int n) {
  if (name == "ttc") return ttc(n);
  if (name == "ttc_sabotaged") return ttc_sabotaged(n);
  if (name == "dc1") return dc1(n);
  if (name == "dc2") return dc2(n);
  if (name == "dc0") return dc0(n);
  throw std::invalid_argument("unknown family " + name);
}

ExpansionPlan family_plan(const std::string& name, int n) {
  if (name == "ttc") return ttc_plan(n);
  if (name == "dc1") return dc1_plan(n);
  if (name == "dc2") return dc2_plan(n);
  if (name == "dc0") return dc0_plan(n);
  throw std::invalid_argument("no expansion plan for family " + name);
}

std::string ttc_mutex_predicate(int n) {
  if (n < 2) return "true";
  std::string pred;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (!pred.empty()) pred += " or ";
      pred += "(in_tunnel_" + num(i) + " and in_tunnel_" + num(j) + ")";
    }
  return "not (" + pred + ")";
}

}  // namespace bench
}  // namespace mis
