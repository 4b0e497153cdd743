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

#include "sswnp/report.hpp"

#include "sswnp/errors.hpp"
#include "sswnp/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace sswnp
{
namespace
{

std::string csv_field(const std::string & s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string pair_text(double ade, double fde, int digits = 3)
{
  return format_fixed(ade, digits) + " / " + format_fixed(fde, digits);
}

const reference::AdeFde * ablation_reference(Mode mode)
{
  return &reference::kNbaAblation.at(static_cast<std::size_t>(mode));
}

const reference::AdeFde * noisy_reference(Mode mode)
{
  switch (mode) {
    case Mode::kBaseline:
      return &reference::kNbaNoisyBaseline;
    case Mode::kFull:
      return &reference::kNbaNoisyFull;
    default:
      return nullptr;
  }
}

}  // namespace

void Table::add_row(std::vector<std::string> row)
{
  if (row.size() != headers.size()) {
    throw ShapeError(
      "table row has " + std::to_string(row.size()) + " cells, expected " +
      std::to_string(headers.size()));
  }
  rows.push_back(std::move(row));
}

void write_csv(const Table & table, std::ostream & out)
{
  auto line = [&out](const std::vector<std::string> & cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "," : "") << csv_field(cells[i]);
    }
    out << '\n';
  };
  line(table.headers);
  for (const auto & row : table.rows) {
    line(row);
  }
}

void write_markdown(const Table & table, std::ostream & out)
{
  std::vector<std::size_t> width(table.headers.size(), 3);
  for (std::size_t c = 0; c < table.headers.size(); ++c) {
    width[c] = std::max(width[c], table.headers[c].size());
    for (const auto & row : table.rows) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  auto line = [&](const std::vector<std::string> & cells) {
    out << '|';
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << ' ' << cells[c] << std::string(width[c] - cells[c].size(), ' ') << " |";
    }
    out << '\n';
  };
  line(table.headers);
  out << '|';
  for (std::size_t w : width) {
    out << std::string(w + 2, '-') << '|';
  }
  out << '\n';
  for (const auto & row : table.rows) {
    line(row);
  }
}

std::string format_exact(double value)
{
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) {
      break;
    }
  }
  return buf;
}

std::string format_fixed(double value, int digits)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

Table ablation_summary(const AblationTable & ablation)
{
  Table t;
  t.headers = {"mode",
               "clean ADE / FDE",
               "noisy ADE / FDE",
               "ADE degradation",
               "ref. NBA 4.0 s clean",
               "ref. NBA 4.0 s noisy"};
  for (const auto & row : ablation.rows) {
    const auto * clean_ref = ablation_reference(row.mode);
    const auto * noisy_ref = noisy_reference(row.mode);
    t.add_row({
      mode_name(row.mode),
      pair_text(row.median_clean_ade, row.median_clean_fde, 4),
      pair_text(row.median_noisy_ade, row.median_noisy_fde, 4),
      format_fixed(row.median_ade_degradation, 4),
      pair_text(clean_ref->ade, clean_ref->fde),
      noisy_ref ? pair_text(noisy_ref->ade, noisy_ref->fde) : "n/a",
    });
  }
  return t;
}

Table ablation_details(const AblationTable & ablation)
{
  Table t;
  t.headers = {"mode", "seed",      "omega_test",      "clean_ade",      "clean_fde",
               "noisy_ade", "noisy_fde", "ade_degradation", "fde_degradation", "k", "n"};
  for (const auto & row : ablation.rows) {
    for (std::size_t i = 0; i < row.per_seed.size(); ++i) {
      const auto & r = row.per_seed[i];
      t.add_row({mode_name(row.mode), std::to_string(ablation.seeds.at(i)),
                 format_exact(r.omega_test), format_exact(r.clean.ade), format_exact(r.clean.fde),
                 format_exact(r.noisy.ade), format_exact(r.noisy.fde),
                 format_exact(r.ade_degradation), format_exact(r.fde_degradation),
                 std::to_string(r.clean.k), std::to_string(r.clean.n)});
    }
  }
  return t;
}

Table sweep_summary(const SweepTable & sweep)
{
  Table t;
  t.headers = {"omega", "ADE / FDE", "argmin", "ref. NBA ADE / FDE"};
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const auto & row = sweep.rows[i];
    std::string ref = "n/a";
    for (const auto & p : reference::kNbaSweep) {
      if (p.omega == row.omega) {
        ref = pair_text(p.metrics.ade, p.metrics.fde);
      }
    }
    t.add_row({format_exact(row.omega), pair_text(row.median_ade, row.median_fde, 4),
               i == sweep.best_index ? "*" : "", ref});
  }
  return t;
}

Table sweep_details(const SweepTable & sweep)
{
  Table t;
  t.headers = {"omega", "seed", "ade", "fde", "k", "n"};
  for (const auto & row : sweep.rows) {
    for (std::size_t i = 0; i < row.per_seed.size(); ++i) {
      const auto & m = row.per_seed[i];
      t.add_row({format_exact(row.omega), std::to_string(sweep.seeds.at(i)), format_exact(m.ade),
                 format_exact(m.fde), std::to_string(m.k), std::to_string(m.n)});
    }
  }
  return t;
}

Table sweep_curve(const SweepTable & sweep)
{
  Table t;
  t.headers = {"omega", "ade"};
  for (const auto & row : sweep.rows) {
    t.add_row({format_exact(row.omega), format_exact(row.median_ade)});
  }
  return t;
}

Table lss_curve(const LambdaDiagnostic & diagnostic)
{
  Table t;
  t.headers = {"step", "l_ss"};
  for (const auto & [step, value] : diagnostic.curve) {
    t.add_row({std::to_string(step), format_exact(value)});
  }
  return t;
}

Table lss_epoch_means(const LambdaDiagnostic & diagnostic)
{
  Table t;
  t.headers = {"epoch", "mean l_ss"};
  for (std::size_t e = 0; e < diagnostic.epoch_means.size(); ++e) {
    t.add_row({std::to_string(e), format_fixed(diagnostic.epoch_means[e], 6)});
  }
  return t;
}

Table robustness_summary(const RobustnessReport & report)
{
  Table t;
  t.headers = {"environment", "omega_test", "minADE", "minFDE", "k", "n"};
  t.add_row({"clean", "0", format_fixed(report.clean.ade), format_fixed(report.clean.fde),
             std::to_string(report.clean.k), std::to_string(report.clean.n)});
  t.add_row({"noisy", format_exact(report.omega_test), format_fixed(report.noisy.ade),
             format_fixed(report.noisy.fde), std::to_string(report.noisy.k),
             std::to_string(report.noisy.n)});
  t.add_row({"degradation", "", format_fixed(report.ade_degradation),
             format_fixed(report.fde_degradation), "", ""});
  return t;
}

}  // namespace sswnp
