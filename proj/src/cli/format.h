// Copyright 2026 The satrelay Authors
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


#ifndef SATRELAY_CLI_FORMAT_H_
#define SATRELAY_CLI_FORMAT_H_

#include <ostream>
#include <string>
#include <vector>

namespace satrelay::cli {

// Shortest decimal form that parses back to the same double; "nan", "inf"
// and "-inf" for the special values. Locale independent.
std::string FormatNumber(double v);

// One CSV line; cells are written verbatim.
void WriteCsvRow(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace satrelay::cli

#endif  // SATRELAY_CLI_FORMAT_H_
