// Copyright 2026 The sswnp Authors
//
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

#ifndef SSWNP__REPORT_HPP_
#define SSWNP__REPORT_HPP_

#include "sswnp/experiments.hpp"
#include "sswnp/training.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sswnp
{

/// Rectangular string table rendered either as CSV or as an aligned
/// markdown table.
struct Table
{
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

void write_csv(const Table & table, std::ostream & out);
void write_markdown(const Table & table, std::ostream & out);

/// Shortest decimal form that parses back to the same double.
std::string format_exact(double value);
/// Fixed-point form for human-facing markdown.
std::string format_fixed(double value, int digits = 4);

/// Per-mode seed medians: 3 mode rows, clean and noisy environments, plus
/// the published NBA reference columns.
Table ablation_summary(const AblationTable & ablation);
/// Every (mode, seed) run.
Table ablation_details(const AblationTable & ablation);

/// Seed-median ADE/FDE per omega with the published sweep reference.
Table sweep_summary(const SweepTable & sweep);
Table sweep_details(const SweepTable & sweep);
/// Plot series: omega,ade (seed-median).
Table sweep_curve(const SweepTable & sweep);

/// Plot series: step,l_ss.
Table lss_curve(const LambdaDiagnostic & diagnostic);
Table lss_epoch_means(const LambdaDiagnostic & diagnostic);

Table robustness_summary(const RobustnessReport & report);

}  // namespace sswnp

#endif  // SSWNP__REPORT_HPP_
