#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "dxsim/dram/address_map.hpp"
#include "dxsim/dram/channel.hpp"
#include "dxsim/dram/dram_system.hpp"
#include "dxsim/dram/timing_checker.hpp"

using namespace dxsim;
using namespace dxsim::dram;

namespace {

MemRequest request_to(const DramConfig& cfg, std::uint64_t id, std::uint32_t bg, std::uint32_t bank,
                      std::uint32_t row, std::uint32_t column, Tick arrival) {
  MemRequest r;
  r.id = id;
  r.coord = {0, 0, bg, bank, row, column, 0};
  r.address = AddressMapper(cfg).compose(r.coord);
  r.arrival = arrival;
  return r;
}

// Steps the channel on the DRAM clock until it is empty.
std::vector<IssuedCommand> drain(Channel& ch, const DramConfig& cfg, Tick start = 0) {
  std::vector<IssuedCommand> out;
  for (Tick now = start + cfg.tck; !ch.empty(); now += cfg.tck)
    if (auto c = ch.step(now)) out.push_back(*c);
  return out;
}

std::vector<std::uint64_t> column_order(const std::vector<IssuedCommand>& cmds) {
  std::vector<std::uint64_t> ids;
  for (const auto& c : cmds)
    if (c.cmd == Command::RD || c.cmd == Command::WR) ids.push_back(c.request.id);
  return ids;
}

}  // namespace

TEST_SUITE("dram") {
  TEST_CASE("default configuration and peak bandwidth") {
    const DramConfig cfg;
    CHECK(cfg.channels == 2);
    CHECK(cfg.tck == 625);
    CHECK(cfg.trp == 12500);
    CHECK(cfg.trcd == 12500);
    CHECK(cfg.tccd_s == 2500);
    CHECK(cfg.tccd_l == 5000);
    CHECK(cfg.trtp == 7500);
    CHECK(cfg.tras == 32500);
    CHECK(cfg.request_buffer_size == 32);
    CHECK(cfg.burst_time() == 2500);
    CHECK(cfg.peak_channel_bandwidth() == doctest::Approx(25.6e9));
    CHECK(cfg.peak_bandwidth() == doctest::Approx(51.2e9));
  }

  TEST_CASE("map_address examples") {
    const DramConfig cfg;
    CHECK(map_address(0, cfg) == DramCoord{});
    CHECK(map_address(64, cfg) == DramCoord{1, 0, 0, 0, 0, 0, 0});
    CHECK(map_address(64 * 2, cfg) == DramCoord{0, 0, 1, 0, 0, 0, 0});
    CHECK(map_address(64 * 2 * 4, cfg) == DramCoord{0, 0, 0, 1, 0, 0, 0});
    CHECK(map_address(64 * 2 * 4 * 4, cfg) == DramCoord{0, 0, 0, 0, 0, 1, 0});
    CHECK(map_address(64ull * 32 * 128, cfg) == DramCoord{0, 0, 0, 0, 1, 0, 0});
    CHECK(map_address(13, cfg).word_offset == 13);
    CHECK_THROWS_AS(map_address(cfg.capacity_bytes(), cfg), CapacityError);
  }

  TEST_CASE("map_address round-trips and is a bijection on lines") {
    const DramConfig cfg;
    const AddressMapper m(cfg);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Addr> any(0, cfg.capacity_bytes() - 1);
    for (int k = 0; k < 10000; ++k) {
      const Addr a = any(rng);
      const DramCoord c = m.map(a);
      REQUIRE(c.channel < cfg.channels);
      REQUIRE(c.bank_group < cfg.bank_groups);
      REQUIRE(c.bank < cfg.banks_per_group);
      REQUIRE(c.row < cfg.rows);
      REQUIRE(c.column < cfg.columns_per_row);
      REQUIRE(m.compose(c) == a);
    }
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>>
        seen;
    for (Addr line = 0; line < 4096; ++line) {
      const DramCoord c = m.map(line * cfg.cacheline_bytes);
      seen.insert({c.channel, c.bank_group, c.bank, c.row, c.column});
    }
    CHECK(seen.size() == 4096);
  }

  TEST_CASE("mapping order is a swappable policy") {
    DramConfig cfg;
    cfg.mapping = parse_mapping("ro,co,ba,bg,ra,ch");
    CHECK(format_mapping(cfg.mapping) == "ro,co,ba,bg,ra,ch");
    CHECK(map_address(64, cfg).row == 1);
    const AddressMapper m(cfg);
    for (Addr a = 0; a < 1 << 20; a += 4099) CHECK(m.compose(m.map(a)) == a);
    CHECK_THROWS_AS(parse_mapping("ch,bg,ba"), ConfigError);
  }

  TEST_CASE("earliest_issue examples") {
    const DramConfig cfg;
    ChannelState st(cfg);
    const DramCoord c{0, 0, 0, 0, 5, 0, 0};
    BankState& bank = st.banks[st.bank_slot(cfg, c)];

    CHECK(earliest_issue(Command::ACT, c, st, cfg) == 0);
    CHECK_THROWS_AS(earliest_issue(Command::RD, c, st, cfg), ProtocolError);
    CHECK_THROWS_AS(earliest_issue(Command::PRE, c, st, cfg), ProtocolError);

    bank.open_row = 5;
    bank.last_act = 0;
    st.last_command = 0;
    CHECK(earliest_issue(Command::RD, c, st, cfg) == 12500);
    CHECK_THROWS_AS(earliest_issue(Command::ACT, c, st, cfg), ProtocolError);
    CHECK_THROWS_AS(earliest_issue(Command::RD, DramCoord{0, 0, 0, 0, 6, 0, 0}, st, cfg),
                    ProtocolError);

    bank.last_rd_wr = 12500;
    st.last_command = 12500;
    CHECK(earliest_issue(Command::PRE, c, st, cfg) == 32500);

    bank.open_row.reset();
    bank.last_pre = 32500;
    st.last_command = 32500;
    CHECK(earliest_issue(Command::ACT, c, st, cfg) == 45000);
  }

  TEST_CASE("column-to-column spacing depends on bank group") {
    const DramConfig cfg;
    ChannelState st(cfg);
    const DramCoord a{0, 0, 0, 0, 1, 0, 0};
    const DramCoord same{0, 0, 0, 1, 1, 0, 0};
    const DramCoord other{0, 0, 1, 0, 1, 0, 0};
    for (const auto& c : {a, same, other}) {
      st.banks[st.bank_slot(cfg, c)].open_row = 1;
      st.banks[st.bank_slot(cfg, c)].last_act = 0;
    }
    const Tick rd = 20000;
    st.last_command = rd;
    st.last_column = rd;
    st.last_column_in_group[st.group_slot(cfg, a)] = rd;
    st.data_bus_free = rd + cfg.burst_time();
    CHECK(earliest_issue(Command::RD, other, st, cfg) - rd == 2500);
    CHECK(earliest_issue(Command::RD, same, st, cfg) - rd == 5000);
  }

  TEST_CASE("request buffer admits 32 per channel") {
    const DramConfig cfg;
    Channel ch(cfg, 0);
    for (std::uint64_t k = 0; k < 32; ++k)
      CHECK(ch.enqueue(request_to(cfg, k + 1, 0, 0, 0, static_cast<std::uint32_t>(k), 0)));
    CHECK(ch.full());
    CHECK_FALSE(ch.enqueue(request_to(cfg, 99, 0, 0, 0, 40, 0)));
    CHECK(ch.counters().rejected == 1);

    Tick now = cfg.tck;
    while (ch.occupancy() == 32) {
      ch.step(now);
      now += cfg.tck;
    }
    auto retry = request_to(cfg, 99, 0, 0, 0, 40, now);
    CHECK(ch.enqueue(retry));
  }

  TEST_CASE("FR-FCFS prefers row hits, then the oldest") {
    const DramConfig cfg;
    Channel ch(cfg, 0);
    // open row 7 first
    ch.enqueue(request_to(cfg, 1, 0, 0, 7, 0, 0));
    auto first = drain(ch, cfg);
    REQUIRE(column_order(first) == std::vector<std::uint64_t>{1});
    const Tick t0 = first.back().at;

    ch.enqueue(request_to(cfg, 2, 0, 0, 5, 0, t0));
    ch.enqueue(request_to(cfg, 3, 0, 0, 7, 1, t0 + 1));
    ch.enqueue(request_to(cfg, 4, 0, 0, 7, 2, t0 + 2));
    const auto cmds = drain(ch, cfg, t0);
    CHECK(column_order(cmds) == std::vector<std::uint64_t>{3, 4, 2});
    CHECK_FALSE(Channel(cfg, 0).step(cfg.tck).has_value());
  }

  TEST_CASE("row hit statistics") {
    const DramConfig cfg;
    Channel ch(cfg, 0);
    for (std::uint32_t k = 0; k < 10; ++k) ch.enqueue(request_to(cfg, k + 1, 0, 0, 3, k, 0));
    drain(ch, cfg);
    const auto s = summarize(cfg, {&ch}, 1'000'000);
    CHECK(s.reads == 10);
    CHECK(s.acts == 1);
    REQUIRE(s.rbh.has_value());
    CHECK(*s.rbh == doctest::Approx(0.9));

    Channel one(cfg, 0);
    one.enqueue(request_to(cfg, 1, 0, 0, 3, 0, 0));
    drain(one, cfg);
    CHECK(*summarize(cfg, {&one}, 1'000'000).rbh == 0.0);
    CHECK_FALSE(summarize(cfg, {}, 1'000'000).rbh.has_value());
  }

  TEST_CASE("saturated alternating bank groups reach full bandwidth") {
    const DramConfig cfg;
    EventQueue events;
    VectorTrace trace;
    DramSystem dram(cfg, events, &trace);
    const AddressMapper& m = dram.mapper();
    std::uint64_t next = 0, done = 0;
    const std::uint64_t total = 4096;
    std::function<void()> feed = [&] {
      while (next < total) {
        DramCoord c{0, 0, static_cast<std::uint32_t>(next % 4), 0, 0,
                    static_cast<std::uint32_t>((next / 4) % cfg.columns_per_row), 0};
        c.row = static_cast<std::uint32_t>(next / (4 * cfg.columns_per_row));
        MemRequest r;
        r.address = m.compose(c);
        if (!dram.enqueue(r, [&](const MemRequest&, Tick) {
              ++done;
              feed();
            }))
          break;
        ++next;
      }
    };
    feed();
    while (events.run_one()) {
    }
    CHECK(done == total);
    const auto s = dram.stats(events.now());
    // one channel of two carries the traffic
    CHECK(s.bw_util_steady * cfg.channels == doctest::Approx(1.0).epsilon(0.05));
    CHECK(s.bw_util <= 1.0);
    CHECK(s.reads + s.writes == total);
    CHECK(check_timing(trace.events, cfg).ok());
  }
}
