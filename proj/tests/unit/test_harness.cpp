// SPDX-License-Identifier: Apache-2.0
//
// dpirs: dual-polarized IRS-assisted massive MIMO-NOMA link simulator
// Copyright (C) 2026 The dpirs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "dpirs/csv.hpp"
#include "dpirs/simulation.hpp"
#include "dpirs/validate.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace dpirs;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const char *kBase = R"({
  "antennas": 90, "rx_antennas": [4], "groups": 2, "streams": 4, "group": 1, "cluster": 1,
  "clusters": [
    {"azimuth_deg": 30, "radius": 30, "distance": 120},
    {"azimuth_deg": -30, "radius": 30, "distance": 120},
    {"azimuth_deg": 70, "radius": 30, "distance": 120},
    {"azimuth_deg": -70, "radius": 30, "distance": 120}
  ],
  "user_distances": [135, 125, 115, 105],
  "power": [0.4, 0.35, 0.2, 0.05],
  "chi": 0.5, "xi": 0, "snr_db": [10, 20], "elements": [20], "trials": 6, "seed": 3
})";

SimConfig base() { return parse_config(kBase); }

std::string constraint_message(const SimConfig &cfg)
{
    try
    {
        prepare_system(cfg);
    }
    catch (const ConstraintError &e)
    {
        return e.what();
    }
    return {};
}

std::filesystem::path preset(const std::string &name) { return std::filesystem::path(DPIRS_PRESET_DIR) / (name + ".json"); }

} // namespace

TEST_CASE("config: JSON round trip", "[harness]")
{
    auto cfg = base();
    cfg.chi_bs_irs = 0.3;
    cfg.trials_by_elements[20] = 9;
    cfg.schemes = {Scheme::irs_noma, Scheme::oma};
    const auto back = parse_config(dump_config(cfg));
    CHECK(back.antennas == 90);
    CHECK(back.group == cfg.group);
    CHECK(back.cluster == cfg.cluster);
    REQUIRE(back.clusters.size() == 4);
    CHECK_THAT(back.clusters[3].azimuth, WithinAbs(cfg.clusters[3].azimuth, 1e-15));
    CHECK(back.alpha_sq == cfg.alpha_sq);
    CHECK(back.chi_bs_irs == cfg.chi_bs_irs);
    CHECK(back.trials_for(20) == 9);
    CHECK(back.schemes == cfg.schemes);
    CHECK(dump_config(back) == dump_config(cfg));
}

TEST_CASE("config: scalars, indices and power normalization", "[harness]")
{
    const auto cfg = base();
    CHECK(cfg.chi == std::vector<double>{0.5});
    CHECK(cfg.group == 0);
    CHECK(cfg.cluster == 0);
    auto j = std::string(kBase);
    j.replace(j.find("[0.4, 0.35, 0.2, 0.05]"), 22, "[4, 3.5, 2, 0.5]");
    const auto scaled = parse_config(j);
    for (std::size_t u = 0; u < 4; ++u)
        CHECK_THAT(scaled.alpha_sq[u], WithinRel(cfg.alpha_sq[u], 1e-15));
}

TEST_CASE("config: unknown keys and schemes are rejected", "[harness]")
{
    auto j = std::string(kBase);
    j.insert(1, "\"antenas\": 90, ");
    CHECK_THROWS_WITH(parse_config(j), ContainsSubstring("antenas"));
    CHECK_THROWS_WITH(scheme_from_string("mimo"), ContainsSubstring("unknown scheme"));
    CHECK(scheme_from_string("noma_dual_pol") == Scheme::noma_dual_pol);
}

TEST_CASE("config: constraint violations are named", "[harness]")
{
    auto cfg = base();
    cfg.groups = 3;
    CHECK_THAT(constraint_message(cfg), ContainsSubstring("G <= Mbar/2"));

    cfg = base();
    cfg.streams = 3;
    CHECK_THAT(constraint_message(cfg), ContainsSubstring("Mbar must be a positive even number"));

    cfg = base();
    cfg.streams = 26; // 2 r* = 24 for the serving cluster
    CHECK_THAT(constraint_message(cfg), ContainsSubstring("Mbar <= 2*r*_k violated"));

    cfg = base();
    cfg.streams = 2; // four clusters
    cfg.groups = 1;
    CHECK_THAT(constraint_message(cfg), ContainsSubstring("K <= Mbar violated"));

    cfg = base();
    cfg.trials = 0;
    CHECK_THAT(constraint_message(cfg), ContainsSubstring("trials"));

    cfg = base();
    cfg.rx_antennas = {3};
    CHECK_THROWS_AS(prepare_system(cfg), ConstraintError);
}

TEST_CASE("stream budget against the remaining clusters", "[harness]")
{
    // Shrink the array until the other clusters' eigenmodes fill it.
    auto cfg = base();
    cfg.antennas = 30;
    CHECK(constraint_message(cfg).empty());
    cfg.streams = 8;
    CHECK_THAT(constraint_message(cfg), ContainsSubstring("Mbar <= M - 2*sum(r*_k') violated"));
    cfg.antennas = 20;
    cfg.streams = 4;
    CHECK_THAT(constraint_message(cfg), ContainsSubstring("Mbar <= M - 2*sum(r*_k') violated"));
}

TEST_CASE("sweep: grid cardinality and record invariants", "[harness]")
{
    auto cfg = base();
    cfg.schemes = {Scheme::irs_noma, Scheme::noma_dual_pol};
    const auto records = run_sweep(cfg, 1);
    REQUIRE(records.size() == 4);
    std::set<std::pair<std::string, double>> cells;
    for (const auto &r : records)
    {
        cells.emplace(r.scheme, r.snr_db);
        CHECK(r.ci95 >= 0);
        CHECK(r.trials == 6);
        REQUIRE(r.user_rates.size() == 4);
        double s = 0;
        for (double v : r.user_rates)
            s += v;
        CHECK_THAT(r.sum_rate, WithinAbs(s, 1e-9));
    }
    CHECK(cells.size() == 4);
    CHECK(records[0].elements == 20);
    CHECK(records[2].elements == 0);
}

TEST_CASE("sweep: worker count does not change results", "[harness]")
{
    auto cfg = base();
    cfg.schemes = {Scheme::irs_noma, Scheme::oma};
    const auto one = run_sweep(cfg, 1);
    const auto many = run_sweep(cfg, 8);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i)
    {
        CHECK_THAT(many[i].sum_rate, WithinRel(one[i].sum_rate, 1e-12));
        CHECK(many[i].ci95 == one[i].ci95);
        for (std::size_t u = 0; u < one[i].user_rates.size(); ++u)
            CHECK(many[i].user_rates[u] == one[i].user_rates[u]);
    }
    CHECK(format_csv(one) == format_csv(many));
}

TEST_CASE("sweep: confidence interval shrinks with trials", "[harness]")
{
    auto cfg = base();
    cfg.schemes = {Scheme::noma_dual_pol};
    cfg.snr_db = {20};
    cfg.trials = 100;
    const double small = run_sweep(cfg, 1).at(0).ci95;
    cfg.trials = 400;
    const double large = run_sweep(cfg, 1).at(0).ci95;
    const double ratio = small / large;
    INFO("ci ratio " << ratio);
    CHECK(ratio >= 1.6);
    CHECK(ratio <= 2.4);
}

TEST_CASE("baselines: elementary rate forms", "[harness]")
{
    auto cfg = base();
    cfg.user_distances = {110};
    cfg.alpha_sq = {1.0};
    cfg.groups = 1;
    cfg.schemes = {Scheme::oma};
    const auto single = prepare_system(cfg);
    UserSample s;
    s.gain = 0.7;
    CHECK_THAT(user_rate(single, Scheme::oma, 0, s, 50, 0), WithinRel(std::log2(1 + 50 * 0.7), 1e-15));

    auto four = base();
    four.schemes = {Scheme::oma, Scheme::noma_single_pol};
    const auto sys = prepare_system(four);
    const int top = sys.ladder.back();
    CHECK(top == 3); // nearest user
    CHECK_THAT(user_rate(sys, Scheme::noma_single_pol, top, s, 50, 0),
               WithinRel(std::log2(1 + 50 * 0.7 * four.alpha_sq[top]), 1e-15));
    CHECK_THAT(user_rate(sys, Scheme::oma, 1, s, 50, 0.3), WithinRel(std::log2(1 + 50 * 0.7) / 4, 1e-15));
    CHECK_THROWS(baseline_rates(sys, Scheme::irs_noma, 4, 0.5, 0, 10, 0));

    const auto rates = baseline_rates(sys, Scheme::noma_single_pol, 4, 0.5, 0, 20, 0);
    REQUIRE(rates.size() == 4);
    for (double r : rates)
        CHECK(r >= 0);
}

TEST_CASE("baselines: prepared system must carry the single-polarized precoder", "[harness]")
{
    const auto sys = prepare_system(base());
    CHECK_THROWS_AS(single_pol_gain(sys, 4, 0, 0), std::logic_error);
    CHECK(dual_pol_gain(sys, 4, 0.5, 0, 0) > 0);
}

TEST_CASE("csv: header, row count and round trip", "[harness]")
{
    auto cfg = base();
    cfg.schemes = {Scheme::irs_noma, Scheme::analytic};
    cfg.trials = 3;
    const auto records = run_sweep(cfg, 1);
    REQUIRE(records.size() == 4);

    const auto dir = std::filesystem::temp_directory_path() / "dpirs_csv_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.csv";
    emit_csv(records, path);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    CHECK(text.rfind(kCsvHeader, 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    CHECK(text == format_csv(records));

    const auto back = parse_csv(text);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < back.size(); ++i)
    {
        CHECK(back[i].scheme == records[i].scheme);
        CHECK(back[i].snr_db == records[i].snr_db);
        CHECK(back[i].elements == records[i].elements);
        CHECK(back[i].xi == records[i].xi);
        CHECK(back[i].chi == records[i].chi);
        CHECK(back[i].rx_antennas == records[i].rx_antennas);
        CHECK(back[i].users == records[i].users);
        CHECK(back[i].user_rates == records[i].user_rates);
        CHECK(back[i].sum_rate == records[i].sum_rate);
        CHECK(back[i].ci95 == records[i].ci95);
        CHECK(back[i].trials == records[i].trials);
        CHECK(back[i].degenerate == records[i].degenerate);
    }
    std::filesystem::remove_all(dir);

    CHECK_THROWS(emit_csv({}, path));
    CHECK_THROWS(emit_csv(records, dir / "missing" / "nested" / "out.csv"));
}

TEST_CASE("presets load and validate", "[harness]")
{
    for (const char *name : {"fig4", "fig5", "fig6", "fig7", "fig8"})
    {
        INFO(name);
        const auto cfg = load_config(preset(name));
        CHECK(cfg.name == name);
        CHECK_NOTHROW(validate_basic(cfg));
    }
}

TEST_CASE("fig8 preset covers every scheme and xi curve over the SNR grid", "[harness]")
{
    auto cfg = load_config(preset("fig8"));
    cfg.trials = 1;
    cfg.trials_by_elements.clear();
    const auto records = run_sweep(cfg);

    std::size_t expected = 0;
    const std::size_t cell = cfg.rx_antennas.size() * cfg.chi.size() * cfg.xi.size() * cfg.snr_db.size();
    for (Scheme s : cfg.schemes)
        expected += s == Scheme::irs_noma ? cell * cfg.elements.size() : cell;
    CHECK(records.size() == expected);

    std::map<std::tuple<std::string, int, double>, std::set<double>> curves;
    for (const auto &r : records)
        curves[{r.scheme, r.elements, r.xi}].insert(r.snr_db);
    for (const auto &[key, snrs] : curves)
        CHECK(snrs.size() == cfg.snr_db.size());
    for (double xi : cfg.xi)
    {
        CHECK(curves.count({"oma", 0, xi}));
        CHECK(curves.count({"noma_single_pol", 0, xi}));
        for (int L : cfg.elements)
            CHECK(curves.count({"irs_noma", L, xi}));
    }
    const auto text = format_csv(records);
    CHECK(std::size_t(std::count(text.begin(), text.end(), '\n')) == expected + 1);
}

TEST_CASE("scheme crossing under imperfect cancellation", "[harness]")
{
    auto cfg = base();
    cfg.schemes = {Scheme::irs_noma, Scheme::oma, Scheme::noma_single_pol};
    cfg.xi = {0.01};
    cfg.snr_db = {30};
    cfg.elements = {100};
    cfg.trials = 60;
    std::map<std::string, double> sum;
    for (const auto &r : run_sweep(cfg))
        sum[r.scheme] = r.sum_rate;
    INFO("irs " << sum["irs_noma"] << " oma " << sum["oma"] << " single " << sum["noma_single_pol"]);
    CHECK(sum["noma_single_pol"] < sum["oma"]);
    CHECK(sum["irs_noma"] > sum["oma"]);
    CHECK(sum["irs_noma"] > sum["noma_single_pol"]);
}

TEST_CASE("invariant suite passes on the default preset", "[harness]")
{
    for (const auto &c : run_invariant_suite(load_config(preset("fig4"))))
    {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
}
