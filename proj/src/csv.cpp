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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dpirs {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T, typename Fmt>
std::string join(const std::vector<T> &xs, Fmt fmt)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        if (i)
            out += ';';
        out += fmt(xs[i]);
    }
    return out;
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        out.push_back(item);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

} // namespace

std::string format_csv(const std::vector<RateRecord> &records)
{
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto &r : records)
    {
        out += r.scheme + ',' + num(r.snr_db) + ',' + std::to_string(r.elements) + ',' + num(r.xi) + ',' +
               num(r.chi) + ',' + std::to_string(r.rx_antennas) + ',' +
               join(r.users, [](int u) { return std::to_string(u); }) + ',' + join(r.user_rates, num) + ',' +
               num(r.sum_rate) + ',' + num(r.ci95) + ',' + std::to_string(r.trials) + ',' +
               std::to_string(r.degenerate) + '\n';
    }
    return out;
}

void emit_csv(const std::vector<RateRecord> &records, const std::filesystem::path &path)
{
    if (records.empty())
        throw std::invalid_argument("emit_csv: no records to write");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_csv: cannot open " + path.string() + " for writing");
    out << format_csv(records);
    if (!out)
        throw std::runtime_error("emit_csv: write to " + path.string() + " failed");
}

std::vector<RateRecord> parse_csv(const std::string &text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::invalid_argument("parse_csv: missing or unexpected header");
    std::vector<RateRecord> out;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != 12)
            throw std::invalid_argument("parse_csv: expected 12 fields, got " + std::to_string(f.size()));
        RateRecord r;
        r.scheme = f[0];
        r.snr_db = std::stod(f[1]);
        r.elements = std::stoi(f[2]);
        r.xi = std::stod(f[3]);
        r.chi = std::stod(f[4]);
        r.rx_antennas = std::stoi(f[5]);
        for (const auto &u : split(f[6], ';'))
            r.users.push_back(std::stoi(u));
        for (const auto &v : split(f[7], ';'))
            r.user_rates.push_back(std::stod(v));
        r.sum_rate = std::stod(f[8]);
        r.ci95 = std::stod(f[9]);
        r.trials = std::stoi(f[10]);
        r.degenerate = std::stoi(f[11]);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace dpirs
