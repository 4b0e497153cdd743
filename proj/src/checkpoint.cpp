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

#include "sswnp/checkpoint.hpp"

#include "sswnp/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sswnp
{
namespace
{

std::string join(const std::vector<int> & v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? "," : "") + std::to_string(v[i]);
  }
  return s;
}

std::string format17(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<int> parse_sizes(const std::string & text, std::size_t line)
{
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception &) {
      throw ParseError(line, "invalid layer size list '" + text + "'");
    }
  }
  return out;
}

double parse_value(std::string_view token, std::size_t line)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "invalid number '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

void write_checkpoint(const ModelParams & params, std::ostream & out)
{
  const ArchConfig & a = params.arch;
  out << kCheckpointMagic << "\n";
  out << "t_obs=" << a.t_obs << "\n";
  out << "t_fut=" << a.t_fut << "\n";
  out << "feature_dim=" << a.feature_dim << "\n";
  out << "fe_hidden=" << join(a.fe_hidden) << "\n";
  out << "sup_hidden=" << join(a.sup_hidden) << "\n";
  out << "ss_hidden=" << join(a.ss_hidden) << "\n";
  out << "latent_dim=" << a.latent_dim << "\n";
  out << "latent_std=" << format17(a.latent_std) << "\n";
  out << "activation=" << activation_name(a.activation) << "\n";
  for (const auto & [name, t] : named_parameters(params)) {
    out << "tensor " << name << "\n";
    out << "shape " << t.rows() << " " << t.cols() << "\n";
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      for (Eigen::Index c = 0; c < t.cols(); ++c) {
        out << (c ? " " : "") << format17(t(r, c));
      }
      out << "\n";
    }
  }
}

void save_checkpoint(const ModelParams & params, const std::string & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write checkpoint '" + path + "'");
  }
  write_checkpoint(params, out);
}

ModelParams read_checkpoint(std::istream & in)
{
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kCheckpointMagic) {
    throw ParseError(1, "missing checkpoint header '" + std::string(kCheckpointMagic) + "'");
  }

  ArchConfig arch;
  TensorMap tensors;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    if (line.rfind("tensor ", 0) == 0) {
      const std::string name = line.substr(7);
      std::string shape_line;
      if (!std::getline(in, shape_line)) {
        throw ParseError(line_no, "truncated tensor block '" + name + "'");
      }
      ++line_no;
      std::istringstream shape(shape_line);
      std::string tag;
      Eigen::Index rows = -1;
      Eigen::Index cols = -1;
      if (!(shape >> tag >> rows >> cols) || tag != "shape" || rows < 0 || cols < 0) {
        throw ParseError(line_no, "invalid shape line '" + shape_line + "'");
      }
      Tensor t(rows, cols);
      for (Eigen::Index r = 0; r < rows; ++r) {
        std::string row_line;
        if (!std::getline(in, row_line)) {
          throw ParseError(line_no, "truncated tensor '" + name + "'");
        }
        ++line_no;
        std::string_view view = row_line;
        for (Eigen::Index c = 0; c < cols; ++c) {
          const auto start = view.find_first_not_of(' ');
          if (start == std::string_view::npos) {
            throw ParseError(line_no, "tensor '" + name + "' row is short");
          }
          view.remove_prefix(start);
          const auto end = std::min(view.find(' '), view.size());
          t(r, c) = parse_value(view.substr(0, end), line_no);
          view.remove_prefix(end);
        }
        if (view.find_first_not_of(' ') != std::string_view::npos) {
          throw ParseError(line_no, "tensor '" + name + "' row is long");
        }
      }
      if (!tensors.emplace(name, std::move(t)).second) {
        throw ParseError(line_no, "duplicate tensor '" + name + "'");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "unexpected line '" + line + "'");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "t_obs") arch.t_obs = std::stoi(value);
      else if (key == "t_fut") arch.t_fut = std::stoi(value);
      else if (key == "feature_dim") arch.feature_dim = std::stoi(value);
      else if (key == "fe_hidden") arch.fe_hidden = parse_sizes(value, line_no);
      else if (key == "sup_hidden") arch.sup_hidden = parse_sizes(value, line_no);
      else if (key == "ss_hidden") arch.ss_hidden = parse_sizes(value, line_no);
      else if (key == "latent_dim") arch.latent_dim = std::stoi(value);
      else if (key == "latent_std") arch.latent_std = parse_value(value, line_no);
      else if (key == "activation") arch.activation = parse_activation(value);
      else throw ParseError(line_no, "unknown checkpoint key '" + key + "'");
    } catch (const ParseError &) {
      throw;
    } catch (const std::exception & e) {
      throw ParseError(line_no, "invalid value for '" + key + "': " + e.what());
    }
  }

  // Shapes come from the architecture; the file must agree with them.
  ModelParams params = init_params(arch, 0);
  const TensorMap expected = named_parameters(params);
  bool has_ss = false;
  for (const auto & [name, t] : tensors) {
    auto it = expected.find(name);
    if (it == expected.end()) {
      throw ParseError(line_no, "unexpected tensor '" + name + "'");
    }
    if (shape_of(it->second) != shape_of(t)) {
      throw ParseError(line_no, "tensor '" + name + "' has the wrong shape");
    }
    has_ss = has_ss || name.rfind("ss.", 0) == 0;
  }
  for (const auto & [name, t] : expected) {
    const bool optional = name.rfind("ss.", 0) == 0 && !has_ss;
    if (!optional && !tensors.contains(name)) {
      throw ParseError(line_no, "missing tensor '" + name + "'");
    }
  }
  assign_parameters(params, tensors);
  if (!has_ss) {
    params.ss.layers.clear();
  }
  return params;
}

ModelParams load_checkpoint(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open checkpoint '" + path + "'");
  }
  return read_checkpoint(in);
}

}  // namespace sswnp
