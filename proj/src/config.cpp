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

#include "dpirs/config.hpp"

#include "dpirs/precoding.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dpirs {

using nlohmann::json;

const char *to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::irs_noma: return "irs_noma";
    case Scheme::oma: return "oma";
    case Scheme::noma_single_pol: return "noma_single_pol";
    case Scheme::noma_dual_pol: return "noma_dual_pol";
    case Scheme::analytic: return "analytic";
    }
    return "?";
}

Scheme scheme_from_string(const std::string &name)
{
    for (Scheme s : {Scheme::irs_noma, Scheme::oma, Scheme::noma_single_pol, Scheme::noma_dual_pol, Scheme::analytic})
        if (name == to_string(s))
            return s;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

int SimConfig::trials_for(int L) const
{
    const auto it = trials_by_elements.find(L);
    return it == trials_by_elements.end() ? trials : it->second;
}

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

template <typename T>
std::vector<T> scalar_or_list(const json &j)
{
    if (j.is_array())
        return j.get<std::vector<T>>();
    return {j.get<T>()};
}

} // namespace

SimConfig parse_config(const std::string &json_text)
{
    const json j = json::parse(json_text, nullptr, true, true);
    if (!j.is_object())
        throw std::invalid_argument("config: top level must be an object");

    static const std::set<std::string> known{
        "name",   "antennas",  "rx_antennas",   "groups",   "streams",    "group",       "cluster",
        "clusters", "spacing", "energy_fraction", "user_distances", "irs_distance", "array_gain",
        "path_loss_exponent", "power", "chi", "chi_bs_irs", "xi", "snr_db", "elements", "trials",
        "trials_by_elements", "seed", "schemes", "solver"};
    for (const auto &item : j.items())
        if (!known.count(item.key()))
            throw std::invalid_argument("config: unknown key '" + item.key() + "'");

    SimConfig c;
    c.name = j.value("name", c.name);
    c.antennas = j.value("antennas", c.antennas);
    if (j.contains("rx_antennas"))
        c.rx_antennas = scalar_or_list<int>(j["rx_antennas"]);
    c.groups = j.value("groups", c.groups);
    c.streams = j.value("streams", c.streams);
    if (j.contains("group"))
        c.group = j["group"].get<int>() - 1;
    if (j.contains("cluster"))
        c.cluster = j["cluster"].get<int>() - 1;

    for (const auto &cl : j.at("clusters"))
    {
        ClusterGeometry g;
        g.azimuth = cl.at("azimuth_deg").get<double>() * kDeg;
        g.radius = cl.value("radius", g.radius);
        g.distance = cl.value("distance", g.distance);
        c.clusters.push_back(g);
    }
    c.spacing = j.value("spacing", c.spacing);
    c.energy_fraction = j.value("energy_fraction", c.energy_fraction);

    c.user_distances = j.at("user_distances").get<std::vector<double>>();
    c.irs_distance = j.value("irs_distance", c.irs_distance);
    c.array_gain = j.value("array_gain", c.array_gain);
    c.path_loss_exponent = j.value("path_loss_exponent", c.path_loss_exponent);
    c.alpha_sq = j.at("power").get<std::vector<double>>();

    if (j.contains("chi"))
        c.chi = scalar_or_list<double>(j["chi"]);
    if (j.contains("chi_bs_irs") && !j["chi_bs_irs"].is_null())
        c.chi_bs_irs = j["chi_bs_irs"].get<double>();
    if (j.contains("xi"))
        c.xi = scalar_or_list<double>(j["xi"]);
    if (j.contains("snr_db"))
        c.snr_db = scalar_or_list<double>(j["snr_db"]);
    if (j.contains("elements"))
        c.elements = scalar_or_list<int>(j["elements"]);

    c.trials = j.value("trials", c.trials);
    if (j.contains("trials_by_elements"))
        for (const auto &item : j["trials_by_elements"].items())
            c.trials_by_elements[std::stoi(item.key())] = item.value().get<int>();
    c.seed = j.value("seed", c.seed);
    if (j.contains("schemes"))
    {
        c.schemes.clear();
        for (const auto &s : j["schemes"])
            c.schemes.push_back(scheme_from_string(s.get<std::string>()));
    }
    if (j.contains("solver"))
    {
        const auto &s = j["solver"];
        c.solver.tol = s.value("tol", c.solver.tol);
        c.solver.max_iter = s.value("max_iter", c.solver.max_iter);
        c.solver.power_iterations = s.value("power_iterations", c.solver.power_iterations);
    }

    if (c.streams == 0)
        c.streams = 2 * c.groups;
    c.alpha_sq = normalize_power(c.alpha_sq);
    validate_basic(c);
    return c;
}

SimConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const SimConfig &c)
{
    json j;
    j["name"] = c.name;
    j["antennas"] = c.antennas;
    j["rx_antennas"] = c.rx_antennas;
    j["groups"] = c.groups;
    j["streams"] = c.streams;
    j["group"] = c.group + 1;
    j["cluster"] = c.cluster + 1;
    j["clusters"] = json::array();
    for (const auto &g : c.clusters)
        j["clusters"].push_back({{"azimuth_deg", g.azimuth / kDeg}, {"radius", g.radius}, {"distance", g.distance}});
    j["spacing"] = c.spacing;
    j["energy_fraction"] = c.energy_fraction;
    j["user_distances"] = c.user_distances;
    j["irs_distance"] = c.irs_distance;
    j["array_gain"] = c.array_gain;
    j["path_loss_exponent"] = c.path_loss_exponent;
    j["power"] = c.alpha_sq;
    j["chi"] = c.chi;
    j["chi_bs_irs"] = c.chi_bs_irs ? json(*c.chi_bs_irs) : json(nullptr);
    j["xi"] = c.xi;
    j["snr_db"] = c.snr_db;
    j["elements"] = c.elements;
    j["trials"] = c.trials;
    j["trials_by_elements"] = json::object();
    for (const auto &[L, t] : c.trials_by_elements)
        j["trials_by_elements"][std::to_string(L)] = t;
    j["seed"] = c.seed;
    j["schemes"] = json::array();
    for (Scheme s : c.schemes)
        j["schemes"].push_back(to_string(s));
    j["solver"] = {{"tol", c.solver.tol}, {"max_iter", c.solver.max_iter},
                   {"power_iterations", c.solver.power_iterations}};
    return j.dump(2);
}

void validate_basic(const SimConfig &c)
{
    auto fail = [](const std::string &msg) { throw ConstraintError("config: " + msg); };
    if (c.antennas < 2 || c.antennas % 2 != 0)
        fail("M must be an even count >= 2");
    if (c.rx_antennas.empty())
        fail("rx_antennas grid is empty");
    for (int n : c.rx_antennas)
        if (n < 2 || n % 2 != 0)
            fail("N must be an even count >= 2");
    if (c.clusters.empty())
        fail("at least one cluster is required");
    if (c.cluster < 0 || c.cluster >= static_cast<int>(c.clusters.size()))
        fail("cluster index out of range");
    if (c.groups < 1)
        fail("G must be >= 1");
    if (c.streams < 2 || c.streams % 2 != 0)
        fail("Mbar must be a positive even number");
    if (c.groups > c.streams / 2)
        fail("G <= Mbar/2 violated: G = " + std::to_string(c.groups) + ", Mbar = " + std::to_string(c.streams));
    if (c.group < 0 || c.group >= c.groups)
        fail("group index out of range");
    if (c.users() < 1)
        fail("at least one user is required");
    if (c.alpha_sq.size() != c.user_distances.size())
        fail("power list and user_distances differ in length");
    for (double d : c.user_distances)
        if (!(d > 0))
            fail("user distances must be > 0");
    if (!(c.irs_distance > 0) || !(c.array_gain > 0) || !(c.path_loss_exponent >= 0))
        fail("path-loss parameters out of range");
    if (!(c.spacing > 0) || !(c.energy_fraction > 0 && c.energy_fraction <= 1))
        fail("spacing must be > 0 and energy_fraction in (0, 1]");
    if (c.chi.empty() || c.xi.empty() || c.snr_db.empty() || c.elements.empty())
        fail("chi, xi, snr_db and elements grids must be non-empty");
    for (double x : c.chi)
        if (!(x >= 0 && x <= 1))
            fail("chi must lie in [0, 1]");
    if (c.chi_bs_irs && !(*c.chi_bs_irs >= 0 && *c.chi_bs_irs <= 1))
        fail("chi_bs_irs must lie in [0, 1]");
    for (double x : c.xi)
        if (!(x >= 0 && x <= 1))
            fail("xi must lie in [0, 1]");
    for (double s : c.snr_db)
        if (!std::isfinite(s))
            fail("snr_db entries must be finite");
    for (int L : c.elements)
        if (L < 1)
            fail("L must be >= 1");
    if (c.trials < 1)
        fail("trials must be >= 1");
    for (const auto &[L, t] : c.trials_by_elements)
        if (t < 1)
            fail("trials_by_elements entries must be >= 1");
    if (c.schemes.empty())
        fail("no scheme selected");
    if (!(c.solver.tol > 0) || c.solver.max_iter < 1 || c.solver.power_iterations < 1)
        fail("solver options out of range");
    for (const auto &g : c.clusters)
        validate(g);
}

} // namespace dpirs
