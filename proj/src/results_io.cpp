// SPDX-License-Identifier: Apache-2.0
//
// bfcsim - beamforming-cancellation link simulator for mmWave full-duplex
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

#include "bfc/results_io.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace bfc
{

namespace
{

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

void write_records_csv(std::ostream& out, const std::vector<RateRecord>& records)
{
    out << "strategy,snr_db,trial,se_ki,se_ij,se_sum,degenerate\n";
    for (const RateRecord& r : records)
        out << r.strategy << ',' << fmt(r.snr_db) << ',' << r.trial << ',' << fmt(r.se_ki) << ','
            << fmt(r.se_ij) << ',' << fmt(r.se_sum) << ',' << (r.degenerate ? 1 : 0) << '\n';
}

void write_means_csv(std::ostream& out, const std::vector<MeanRecord>& means)
{
    out << "strategy,snr_db,mean_se_ki,mean_se_ij,mean_se_sum,trials\n";
    for (const MeanRecord& m : means)
        out << m.strategy << ',' << fmt(m.snr_db) << ',' << fmt(m.mean_se_ki) << ','
            << fmt(m.mean_se_ij) << ',' << fmt(m.mean_se_sum) << ',' << m.trials << '\n';
}

void write_records_json(std::ostream& out, const std::vector<RateRecord>& records)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const RateRecord& r : records)
        arr.push_back({{"strategy", r.strategy},
                       {"snr_db", r.snr_db},
                       {"trial", r.trial},
                       {"se_ki", r.se_ki},
                       {"se_ij", r.se_ij},
                       {"se_sum", r.se_sum},
                       {"degenerate", r.degenerate}});
    out << arr.dump(2) << '\n';
}

void write_means_json(std::ostream& out, const std::vector<MeanRecord>& means)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const MeanRecord& m : means)
        arr.push_back({{"strategy", m.strategy},
                       {"snr_db", m.snr_db},
                       {"mean_se_ki", m.mean_se_ki},
                       {"mean_se_ij", m.mean_se_ij},
                       {"mean_se_sum", m.mean_se_sum},
                       {"trials", m.trials}});
    out << arr.dump(2) << '\n';
}

namespace
{

void append_channel_row(std::ostringstream& out, std::uint64_t trial, const ChannelMatrix& ch)
{
    out << trial << ',' << to_string(ch.kind) << ',' << ch.h.n_rows << ',' << ch.h.n_cols;
    for (arma::uword m = 0; m < ch.h.n_rows; m++)
        for (arma::uword n = 0; n < ch.h.n_cols; n++)
            out << ',' << fmt(ch.h(m, n).real()) << ',' << fmt(ch.h(m, n).imag());
    out << '\n';
}

} // namespace

std::string channel_dump_rows(std::uint64_t trial, const TrialChannels& channels)
{
    std::ostringstream out;
    append_channel_row(out, trial, channels.h_ki);
    append_channel_row(out, trial, channels.h_ij);
    append_channel_row(out, trial, channels.h_ii);
    return out.str();
}

std::string means_path_for(const std::string& records_path)
{
    const std::filesystem::path p(records_path);
    std::filesystem::path out = p.parent_path() / p.stem();
    out += ".means";
    out += p.extension();
    return out.string();
}

} // namespace bfc
