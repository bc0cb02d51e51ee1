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

#ifndef BFCSIM_RESULTS_IO_HPP
#define BFCSIM_RESULTS_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "bfc/evaluation.hpp"

namespace bfc
{

// CSV schema: strategy,snr_db,trial,se_ki,se_ij,se_sum,degenerate
void write_records_csv(std::ostream& out, const std::vector<RateRecord>& records);

// CSV schema: strategy,snr_db,mean_se_ki,mean_se_ij,mean_se_sum,trials
void write_means_csv(std::ostream& out, const std::vector<MeanRecord>& means);

// Same records/means as arrays of JSON objects.
void write_records_json(std::ostream& out, const std::vector<RateRecord>& records);
void write_means_json(std::ostream& out, const std::vector<MeanRecord>& means);

// Channel dump: one CSV row per realization,
//   trial,kind,nr,nt,re,im,re,im,...   (row-major entry order)
// Three rows per trial: h_ki, h_ij, h_ii.
std::string channel_dump_rows(std::uint64_t trial, const TrialChannels& channels);

// "results.csv" -> "results.means.csv"
std::string means_path_for(const std::string& records_path);

} // namespace bfc

#endif
