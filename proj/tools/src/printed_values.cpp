// SPDX-License-Identifier: Apache-2.0
//
// macromrc: error-rate analysis for MRC receivers in macrodiversity Rayleigh fading
// Copyright (C) 2026 The macromrc authors
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

#include "macromrc_cli/app.hpp"

namespace macromrc::cli
{
    // Published m_p (dB, at rho = 20 dB) and error floors for the built-in scenarios.
    const std::vector<PrintedRow> &printed_rows()
    {
        static const std::vector<PrintedRow> rows = {
            {1, 3.06, 1.36e-1},   {2, 7.68, 6.26e-2},   {3, 28.64, 1.80e-3},  {4, 5.97, 2.49e-2},
            {5, 5.97, 2.76e-2},   {6, 12.93, 1.42e-2},  {7, 17.30, 4.90e-3},  {8, 27.62, 1.68e-4},
            {9, 15.60, 1.21e-4},  {10, 15.60, 2.57e-4}, {11, 17.42, 1.54e-2}, {12, 21.34, 5.20e-3},
            {13, 27.68, 1.99e-4}, {14, 19.65, 7.68e-5}, {15, 19.64, 1.72e-4}, {16, 17.57, 1.50e-3},
            {17, 21.69, 1.61e-4}, {18, 29.32, 5.51e-7}, {19, 20.57, 1.54e-7}, {20, 19.96, 1.04e-6},
        };
        return rows;
    }

    std::optional<PrintedRow> printed_row(int scenario)
    {
        for (const auto &r : printed_rows())
            if (r.scenario == scenario)
                return r;
        return std::nullopt;
    }
}
