// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The mmcs Authors
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

#ifndef MMCS_RECORDS_HPP
#define MMCS_RECORDS_HPP

// Self-describing JSON records for channel realizations, codebooks and
// observation sets. Matrices are stored column-major as separate real and
// imaginary arrays: {"rows": r, "cols": c, "re": [...], "im": [...]}.

#include "mmcs/channel.hpp"
#include "mmcs/sounding.hpp"
#include "mmcs/types.hpp"

#include <nlohmann/json.hpp>

namespace mmcs::records {

nlohmann::json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const nlohmann::json &j);

nlohmann::json to_record(const channel::ChannelRealization &ch);
nlohmann::json to_record(const sounding::Codebook &cb);
nlohmann::json to_record(const sounding::ObservationSet &obs);

channel::ChannelRealization channel_from_record(const nlohmann::json &j);
sounding::Codebook codebook_from_record(const nlohmann::json &j);
sounding::ObservationSet observations_from_record(const nlohmann::json &j);

} // namespace mmcs::records

#endif
