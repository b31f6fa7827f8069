// Copyright 2026 The ktr Authors
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

#include "ktr/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <system_error>

#include <Eigen/Core>

#include "ktr/errors.hpp"
#include "ktr/initial_states.hpp"
#include "ktr/kernels.hpp"
#include "ktr/symmetry.hpp"

namespace ktr {
namespace {

constexpr const char* kVersion = "0.1.0";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17e", v);
  return buf;
}

std::string where(const ConfigEntries& entries, const std::string& key) {
  auto it = entries.find(key);
  if (it == entries.end()) return "default " + key;
  return it->second.second == 0 ? "override " + key : "line " + std::to_string(it->second.second) + " (" + key + ")";
}

double to_double(std::string_view v) {
  double out = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("expected a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

long long to_int(std::string_view v) {
  long long out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError("expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("expected true or false, got '" + std::string(v) + "'");
}

MethodSpec parse_method(std::string_view v) {
  MethodSpec m;
  m.text = std::string(v);
  if (v.starts_with("local:")) {
    m.method = PencilMethod::Local;
    const long long k = to_int(v.substr(6));
    if (k < 1) throw ConfigError("local subset size must be positive");
    m.subset = static_cast<std::size_t>(k);
    return m;
  }
  m.method = parse_method_tag(v);
  if (m.method == PencilMethod::Local) throw ConfigError("method local needs a subset size: local:<k>");
  return m;
}

InitSpec parse_init(std::string_view v) {
  InitSpec init;
  init.text = std::string(v);
  if (v == "plus") return init;
  if (v.starts_with("w0-blocks:")) {
    init.kind = InitSpec::Kind::W0Blocks;
    const long long s = to_int(v.substr(10));
    if (s < 1) throw ConfigError("w0 block count must be positive");
    init.blocks = static_cast<int>(s);
    return init;
  }
  if (v.starts_with("project:")) {
    init.kind = InitSpec::Kind::Project;
    const std::string_view bits = v.substr(8);
    if (bits.empty()) throw ConfigError("project: needs a bit pattern");
    for (char ch : bits) {
      if (ch != '0' && ch != '1') throw ConfigError("project pattern must be binary, got '" + std::string(bits) + "'");
      init.alpha.push_back(ch == '1');
    }
    init.blocks = static_cast<int>(bits.size());
    return init;
  }
  throw ConfigError("unknown init '" + std::string(v) + "'");
}

EvolutionSpec parse_evolution(std::string_view v) {
  EvolutionSpec e;
  e.text = std::string(v);
  if (v == "exact") return e;
  if (v.starts_with("trotter2:")) {
    e.mode = EvolutionMode::Trotter2;
    e.steps_per_unit = to_double(v.substr(9));
    if (!(e.steps_per_unit > 0.0)) throw ConfigError("Trotter steps per unit time must be positive");
    return e;
  }
  throw ConfigError("unknown evolution '" + std::string(v) + "'");
}

// Rethrows module errors with the originating config entry prepended, keeping the type.
template <class F>
auto with_context(const std::string& ctx, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(ctx + ": " + e.what());
  } catch (const ResourceLimit& e) {
    throw ResourceLimit(ctx + ": " + e.what());
  } catch (const DimensionMismatch& e) {
    throw DimensionMismatch(ctx + ": " + e.what());
  } catch (const NotTimeReversal& e) {
    throw NotTimeReversal(ctx + ": " + e.what());
  } catch (const DegenerateProjection& e) {
    throw DegenerateProjection(ctx + ": " + e.what());
  } catch (const DegeneratePencil& e) {
    throw DegeneratePencil(ctx + ": " + e.what());
  } catch (const ModelConsistency& e) {
    throw ModelConsistency(ctx + ": " + e.what());
  } catch (const InternalInconsistency& e) {
    throw InternalInconsistency(ctx + ": " + e.what());
  }
}

bool needs_t(const ExperimentConfig& cfg) {
  if (cfg.init.kind == InitSpec::Kind::Project) return true;
  for (const auto& m : cfg.methods) {
    if (m.method != PencilMethod::Kqd) return true;
  }
  return false;
}

}  // namespace

ConfigEntries parse_config_entries(std::string_view text) {
  ConfigEntries out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected `key = value`");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!out.emplace(key, std::make_pair(value, line_no)).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

ExperimentConfig resolve_config(const ConfigEntries& entries) {
  ExperimentConfig cfg;
  using Setter = std::function<void(std::string_view)>;
  const std::map<std::string, Setter> setters{
      {"model.kind", [&](std::string_view v) { cfg.model.kind = parse_model_tag(v); }},
      {"model.n", [&](std::string_view v) { cfg.model.n = static_cast<int>(to_int(v)); }},
      {"model.gamma", [&](std::string_view v) { cfg.model.gamma = to_double(v); }},
      {"model.mu", [&](std::string_view v) { cfg.model.mu = to_double(v); }},
      {"model.g", [&](std::string_view v) { cfg.model.g = to_double(v); }},
      {"model.g_x", [&](std::string_view v) { cfg.model.g_x = to_double(v); }},
      {"model.g_zz", [&](std::string_view v) { cfg.model.g_zz = to_double(v); }},
      {"model.g_zxz", [&](std::string_view v) { cfg.model.g_zxz = to_double(v); }},
      {"model.j_x", [&](std::string_view v) { cfg.model.j_x = to_double(v); }},
      {"model.j_y", [&](std::string_view v) { cfg.model.j_y = to_double(v); }},
      {"model.j_z", [&](std::string_view v) { cfg.model.j_z = to_double(v); }},
      {"method",
       [&](std::string_view v) {
         cfg.methods.clear();
         std::size_t p = 0;
         while (p <= v.size()) {
           std::size_t e = v.find(',', p);
           if (e == std::string_view::npos) e = v.size();
           cfg.methods.push_back(parse_method(trim(v.substr(p, e - p))));
           p = e + 1;
         }
       }},
      {"init", [&](std::string_view v) { cfg.init = parse_init(v); }},
      {"grid.dt",
       [&](std::string_view v) {
         if (v == "auto") {
           cfg.dt.reset();
           return;
         }
         cfg.dt = to_double(v);
         if (!(*cfg.dt > 0.0)) throw ConfigError("grid.dt must be positive");
       }},
      {"grid.m", [&](std::string_view v) { cfg.m = static_cast<int>(to_int(v)); }},
      {"grid.samples_per_step", [&](std::string_view v) { cfg.samples_per_step = static_cast<int>(to_int(v)); }},
      {"evolution", [&](std::string_view v) { cfg.evolution = parse_evolution(v); }},
      {"epsilon",
       [&](std::string_view v) {
         cfg.epsilon = to_double(v);
         if (cfg.epsilon < 0.0) throw ConfigError("epsilon must be non-negative");
       }},
      {"seed",
       [&](std::string_view v) {
         const long long s = to_int(v);
         if (s < 0) throw ConfigError("seed must be non-negative");
         cfg.seed = static_cast<std::uint64_t>(s);
       }},
      {"output", [&](std::string_view v) { cfg.output = std::string(v); }},
      {"output.timing", [&](std::string_view v) { cfg.timing = to_bool(v); }},
      {"symmetry",
       [&](std::string_view v) {
         if (v == "known") {
           cfg.symmetry = SymmetrySource::Known;
         } else if (v == "solver") {
           cfg.symmetry = SymmetrySource::Solver;
         } else {
           cfg.symmetry = SymmetrySource::Label;
           cfg.symmetry_label = std::string(v);
           PauliString::from_label(v);
         }
       }},
      {"local.blocks", [&](std::string_view v) { cfg.local_blocks = static_cast<int>(to_int(v)); }},
      {"threads",
       [&](std::string_view v) {
         const long long t = to_int(v);
         if (t < 0) throw ConfigError("threads must be non-negative");
         cfg.threads = static_cast<unsigned>(t);
       }},
  };

  for (const auto& [key, entry] : entries) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where(entries, key) + ": unknown key");
    try {
      it->second(entry.first);
    } catch (const Error& e) {
      throw ConfigError(where(entries, key) + ": " + e.what());
    }
  }
  for (const char* required : {"model.kind", "model.n"}) {
    if (!entries.count(required)) throw ConfigError(std::string("missing required key ") + required);
  }

  auto fail = [&](const std::string& key, const std::string& msg) { throw ConfigError(where(entries, key) + ": " + msg); };
  try {
    cfg.model.validate();
  } catch (const Error& e) {
    fail("model.n", e.what());
  }
  const int n = cfg.model.n;
  if (n > kDefaultDenseCap) fail("model.n", "exact reference needs n <= " + std::to_string(kDefaultDenseCap));
  if (cfg.m < 2) fail("grid.m", "m must be at least 2");
  if (cfg.samples_per_step < 2 || cfg.samples_per_step % 2 != 0) {
    fail("grid.samples_per_step", "must be even and at least 2");
  }
  if (cfg.local_blocks < 1 || n % cfg.local_blocks != 0) fail("local.blocks", "must divide model.n");
  for (const auto& m : cfg.methods) {
    if (m.method == PencilMethod::Local && (cfg.local_blocks >= 20 || m.subset > (std::size_t{1} << cfg.local_blocks))) {
      fail("method", "local subset exceeds 2^local.blocks");
    }
  }
  if (cfg.init.kind == InitSpec::Kind::W0Blocks) {
    if (cfg.model.kind != ModelKind::Tfim) fail("init", "w0 blocks are defined for the TFIM");
    if (n % cfg.init.blocks != 0 || (n / cfg.init.blocks) % 4 != 0) {
      fail("init", "w0 blocks need n / s divisible by 4");
    }
  }
  if (cfg.init.kind == InitSpec::Kind::Project && n % cfg.init.blocks != 0) {
    fail("init", "projection pattern length must divide model.n");
  }
  if (cfg.symmetry == SymmetrySource::Label && static_cast<int>(cfg.symmetry_label.size()) != n) {
    fail("symmetry", "label length differs from model.n");
  }
  if (cfg.symmetry == SymmetrySource::Known && needs_t(cfg) && !known_time_reversal(cfg.model)) {
    fail("symmetry", "model has no known time-reversal operator; use symmetry = solver or a label");
  }
  return cfg;
}

ExperimentConfig parse_config(std::string_view text) { return resolve_config(parse_config_entries(text)); }

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::system_error(errno, std::generic_category(), path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<int> prefix_sizes(int m) {
  std::vector<int> out;
  for (int k = 2; k <= m; k += 2) out.push_back(k);
  if (m % 2 != 0) out.push_back(m);
  return out;
}

RunReport run(const ExperimentConfig& cfg) {
  using clock = std::chrono::steady_clock;
  RunReport report;
  auto& prov = report.provenance;
  const int n = cfg.model.n;

  const PauliSum h = with_context("model", [&] { return build(cfg.model); });

  std::optional<PauliString> t;
  if (needs_t(cfg)) {
    t = with_context("symmetry", [&]() -> PauliString {
      PauliString out;
      switch (cfg.symmetry) {
        case SymmetrySource::Known: out = *known_time_reversal(cfg.model); break;
        case SymmetrySource::Label: out = PauliString::from_label(cfg.symmetry_label); break;
        case SymmetrySource::Solver: {
          const auto res = solve_time_reversal(h);
          if (std::holds_alternative<Infeasible>(res)) throw NotTimeReversal("no anticommuting Pauli involution exists");
          out = std::get<SymmetrySolution>(res).operators(1).front();
          break;
        }
      }
      if (!verify_time_reversal(out, h)) throw NotTimeReversal(out.label() + " does not anticommute with every term");
      return out;
    });
  }

  const TimeGrid grid{cfg.dt.value_or(default_time_step(h)), cfg.m};
  const EvolutionPlan plan = with_context("evolution", [&] {
    return cfg.evolution.mode == EvolutionMode::Exact ? EvolutionPlan::exact(h)
                                                      : EvolutionPlan::trotter2(h, cfg.evolution.steps_per_unit);
  });

  const bool sector = cfg.model.kind == ModelKind::Z2Higgs;
  const double reference = with_context("reference", [&] {
    if (sector) {
      const auto gens = gauss_generators(cfg.model);
      return sector_ground_energy(h, gens);
    }
    return cfg.evolution.mode == EvolutionMode::Exact ? plan.eigenvalues()[0] : exact_reference(h).front();
  });

  // Initial state; `prepared` carries the stabilizer sign when T is in play.
  std::optional<PreparedState> prepared;
  const StateVector v0 = with_context("init", [&] {
    switch (cfg.init.kind) {
      case InitSpec::Kind::Plus: return StateVector::plus(n);
      case InitSpec::Kind::W0Blocks: return w0_blocks(n, cfg.init.blocks);
      case InitSpec::Kind::Project: {
        const ProjectorSpec spec{split_blocks(*t, cfg.init.blocks), cfg.init.alpha, n};
        prepared = project(StateVector::plus(n), spec);
        return prepared->state;
      }
    }
    return StateVector::plus(n);
  });

  double tr_residual = 0.0;
  if (t) {
    // Randomized check of T U(tau) T = U(-tau) on a seeded state.
    const StateVector psi = StateVector::random(n, cfg.seed);
    const double tau = grid.dt * (cfg.m - 1) * (0.25 + 0.5 * static_cast<double>(cfg.seed % 1024) / 1024.0);
    const StateVector lhs = apply_pauli(plan.evolve(tau, apply_pauli(psi, *t)), *t);
    const StateVector rhs = plan.evolve(-tau, psi);
    for (std::size_t i = 0; i < lhs.dim(); ++i) tr_residual = std::max(tr_residual, std::abs(lhs[i] - rhs[i]));
    if (tr_residual > 1e-9) {
      throw InternalInconsistency("time-reversal identity violated by " + fmt(tr_residual));
    }
  }

  prov.emplace_back("ktr.version", kVersion);
  prov.emplace_back("eigen.version", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                         "." + std::to_string(EIGEN_MINOR_VERSION));
  prov.emplace_back("kernels", std::string(kernels::active().name));
  prov.emplace_back("model.kind", std::string(model_tag(cfg.model.kind)));
  prov.emplace_back("model.n", std::to_string(n));
  switch (cfg.model.kind) {
    case ModelKind::Tfim: prov.emplace_back("model.gamma", fmt(cfg.model.gamma)); break;
    case ModelKind::Z2Higgs:
      prov.emplace_back("model.mu", fmt(cfg.model.mu));
      prov.emplace_back("model.g", fmt(cfg.model.g));
      break;
    case ModelKind::Cluster:
      prov.emplace_back("model.g_x", fmt(cfg.model.g_x));
      prov.emplace_back("model.g_zz", fmt(cfg.model.g_zz));
      prov.emplace_back("model.g_zxz", fmt(cfg.model.g_zxz));
      break;
    case ModelKind::Heisenberg:
      prov.emplace_back("model.j_x", fmt(cfg.model.j_x));
      prov.emplace_back("model.j_y", fmt(cfg.model.j_y));
      prov.emplace_back("model.j_z", fmt(cfg.model.j_z));
      break;
  }
  prov.emplace_back("model.terms", std::to_string(h.size()));
  prov.emplace_back("symmetry", t ? t->label() : "none");
  std::string methods;
  for (const auto& m : cfg.methods) methods += (methods.empty() ? "" : ",") + m.text;
  prov.emplace_back("method", methods);
  prov.emplace_back("init", cfg.init.text);
  prov.emplace_back("grid.dt", fmt(grid.dt));
  prov.emplace_back("grid.dt.source", cfg.dt ? "config" : "auto");
  prov.emplace_back("grid.m", std::to_string(cfg.m));
  prov.emplace_back("grid.samples_per_step", std::to_string(cfg.samples_per_step));
  prov.emplace_back("evolution", cfg.evolution.text);
  prov.emplace_back("epsilon", fmt(cfg.epsilon));
  prov.emplace_back("seed", std::to_string(cfg.seed));
  prov.emplace_back("local.blocks", std::to_string(cfg.local_blocks));
  prov.emplace_back("output.timing", cfg.timing ? "true" : "false");
  prov.emplace_back("reference.kind", sector ? "gauss-sector" : "exact");
  prov.emplace_back("reference.energy", fmt(reference));
  prov.emplace_back("check.time_reversal_residual", fmt(tr_residual));

  const KrylovOptions opts{cfg.threads};
  for (const auto& method : cfg.methods) {
    const auto start = clock::now();
    const ToeplitzPencil pencil = with_context("method " + method.text, [&]() -> ToeplitzPencil {
      auto stabilized = [&] {
        if (prepared) return *prepared;
        return PreparedState{v0, stabilizer_sign(v0, *t), 1.0};
      };
      switch (method.method) {
        case PencilMethod::Kqd: return build_kqd(h, v0, grid, plan, opts);
        case PencilMethod::Ktr: return build_ktr(h, *t, stabilized(), grid, plan, opts);
        case PencilMethod::Implicit: return implicit_hadamard_rows(v0, h, *t, grid, plan, opts);
        case PencilMethod::Local: {
          const auto blocks = split_blocks(*t, cfg.local_blocks);
          const auto projectors = enumerate_local_projectors(blocks);
          return extended_local_pencil(v0, projectors, h, *t, grid, plan, method.subset, opts);
        }
        case PencilMethod::Integral:
          return build_integral(h, *t, stabilized(), grid, plan, cfg.samples_per_step, opts);
        case PencilMethod::Derivative:
          return build_derivative(h, *t, stabilized(), grid, plan, cfg.samples_per_step, opts);
      }
      throw ConfigError("unhandled method");
    });
    const double build_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();

    for (int mp : prefix_sizes(cfg.m)) {
      const auto solve_start = clock::now();
      const SpectrumResult res =
          with_context("method " + method.text + ", m = " + std::to_string(mp),
                       [&] { return solve(pencil.prefix(mp), cfg.epsilon); });
      const double solve_ms = std::chrono::duration<double, std::milli>(clock::now() - solve_start).count();
      RunRecord rec;
      rec.method = method.text;
      rec.m = mp;
      rec.dt = grid.dt;
      rec.estimate = res.ground();
      rec.reference = reference;
      rec.rel_error = std::abs(rec.estimate - reference) / (reference != 0.0 ? std::abs(reference) : 1.0);
      rec.kept_dim = res.kept_dim;
      rec.wall_ms = cfg.timing ? build_ms + solve_ms : 0.0;
      report.records.push_back(std::move(rec));
    }
  }
  return report;
}

std::string format_table(const RunReport& report) {
  std::string out = "method,m,dt,estimate,reference,rel_error,kept_dim,wall_ms\n";
  for (const auto& r : report.records) {
    out += r.method + ',' + std::to_string(r.m) + ',' + fmt(r.dt) + ',' + fmt(r.estimate) + ',' + fmt(r.reference) +
           ',' + fmt(r.rel_error) + ',' + std::to_string(r.kept_dim) + ',' + fmt(r.wall_ms) + '\n';
  }
  return out;
}

std::string format_provenance(const RunReport& report) {
  std::string out;
  for (const auto& [k, v] : report.provenance) out += k + " = " + v + '\n';
  return out;
}

void emit(const RunReport& report, const std::string& path) {
  auto write = [](const std::string& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::system_error(errno, std::generic_category(), p);
    out << body;
    out.flush();
    if (!out) throw std::system_error(errno, std::generic_category(), p);
  };
  write(path, format_table(report));
  write(path + ".provenance", format_provenance(report));
}

}  // namespace ktr
