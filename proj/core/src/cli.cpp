// Copyright 2026 The finmono Authors
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

#include "finmono/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "finmono/parallel.hpp"
#include "finmono/proofcheck.hpp"
#include "finmono/traces.hpp"

#ifndef FINMONO_VERSION
#define FINMONO_VERSION "0.0.0-dev"
#endif

namespace finmono {

namespace {

using nlohmann::json;

void emit(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

std::string rational_str(const Rational& r) { return r.get_str(); }

std::filesystem::path resolve_cache_dir(const RunConfig& c) {
  if (!c.cache_dir.empty()) return c.cache_dir;
  if (const char* env = std::getenv("FINMONO_FIELD_CACHE")) return env;
  return ".field-cache";
}

json spec_json(const SystemSpec& s) {
  return json{{"p", s.p},
              {"D", s.D},
              {"d", s.d},
              {"twist", to_string(s.twist)},
              {"within_hypotheses", s.within_hypotheses()}};
}

const char* command_name(RunConfig::Command c) {
  switch (c) {
    case RunConfig::Command::Check:
      return "check";
    case RunConfig::Command::Search:
      return "search";
    case RunConfig::Command::Traces:
      return "traces";
    case RunConfig::Command::Prove:
      return "prove";
    case RunConfig::Command::Mellin:
      return "mellin";
  }
  return "?";
}

// The parallelism degree is deliberately not echoed: reports are
// byte-identical across --jobs settings.
json meta_record(const RunConfig& c) {
  json j{{"record", "meta"},
         {"version", version_string()},
         {"command", command_name(c.command)},
         {"format", c.format == RunConfig::Format::Json ? "json" : "csv"},
         {"witness_cap", c.witness_cap},
         {"iteration_budget", c.iteration_budget},
         {"force", c.force}};
  switch (c.command) {
    case RunConfig::Command::Check:
      j["p"] = c.p;
      j["D"] = c.D;
      j["d"] = c.d;
      j["twist"] = to_string(c.twist);
      j["f_max"] = c.f_max;
      j["criterion"] = c.criterion;
      if (c.criterion == "digit-abs") j["A"] = rational_str(c.A);
      break;
    case RunConfig::Command::Search:
      j["p"] = c.p;
      j["D_min"] = c.D_min;
      j["D_max"] = c.D_max;
      j["twist"] = to_string(c.twist);
      j["f_max"] = c.f_max;
      break;
    case RunConfig::Command::Traces:
      j["p"] = c.p;
      j["D"] = c.D;
      j["d"] = c.d;
      j["twist"] = to_string(c.twist);
      j["field_f"] = c.field_f;
      j["vary_leading"] = c.vary_leading;
      {
        json fr = json::array();
        for (auto& [idx, code] : c.freeze) fr.push_back(json{{"coord", idx}, {"code", code}});
        j["freeze"] = fr;
      }
      break;
    case RunConfig::Command::Prove:
      j["base_f_max"] = c.base_f_max;
      j["induction_f"] = c.induction_f;
      j["sample_budget"] = c.sample_budget;
      j["seed"] = c.seed;
      break;
    case RunConfig::Command::Mellin:
      j["p"] = c.p;
      j["D"] = c.D;
      j["d"] = c.d;
      j["twist"] = to_string(c.twist);
      j["field_f"] = c.field_f;
      break;
  }
  return j;
}

int usage_error(std::ostream& out, const std::string& msg) {
  emit(out, json{{"record", "error"}, {"message", msg}});
  return kExitUsage;
}

void emit_report(std::ostream& out, const CriterionReport& rep, bool csv) {
  if (csv) {
    for (const Witness& w : rep.witnesses) {
      out << "witness," << to_string(rep.criterion) << "," << w.f << ",";
      for (size_t i = 0; i < w.x.size(); ++i) out << (i ? " " : "") << w.x[i];
      out << "," << rational_str(w.lhs) << "," << rational_str(w.rhs) << ",,\n";
    }
    for (int f : rep.f_checked)
      out << "verdict," << to_string(rep.criterion) << "," << f << ",,,,"
          << (rep.pass ? "true" : "false") << "," << rep.violations_total << "\n";
    return;
  }
  for (const Witness& w : rep.witnesses)
    emit(out, json{{"record", "witness"},
                   {"criterion", to_string(rep.criterion)},
                   {"f", w.f},
                   {"x", w.x},
                   {"lhs", rational_str(w.lhs)},
                   {"rhs", rational_str(w.rhs)}});
  emit(out, json{{"record", "verdict"},
                 {"criterion", to_string(rep.criterion)},
                 {"f", rep.f_checked},
                 {"pass", rep.pass},
                 {"violations", rep.violations_total},
                 {"witness_cap", rep.witness_cap}});
}

int run_check(const RunConfig& c, std::ostream& out) {
  SystemSpec spec = SystemSpec::make(c.p, c.D, c.d, c.twist);
  std::vector<std::string> criteria;
  if (c.criterion == "all")
    criteria = {"digit", "v", "gauss"};
  else if (c.criterion == "digit" || c.criterion == "digit-abs" || c.criterion == "v" ||
           c.criterion == "gauss")
    criteria = {c.criterion};
  else
    return usage_error(out, "unknown criterion: " + c.criterion);

  unsigned long long total = 0;
  for (int f = 1; f <= c.f_max; ++f) {
    const unsigned long long n = criterion_iteration_count(spec, f);
    total = total + n < total ? ~0ULL : total + n;
  }
  total *= criteria.size();

  const bool csv = c.format == RunConfig::Format::Csv;
  if (csv) {
    out << "# finmono check " << spec.to_string() << " f_max=" << c.f_max
        << " criterion=" << c.criterion << "\n";
    out << "record,criterion,f,x,lhs,rhs,pass,violations\n";
  } else {
    emit(out, meta_record(c));
    emit(out, json{{"record", "meta"}, {"spec", spec_json(spec)}, {"iterations", total}});
  }
  if (total > c.iteration_budget && !c.force) {
    if (csv) {
      out << "# refused: iteration budget exceeded\n";
    } else {
      emit(out, json{{"record", "refusal"},
                     {"reason", "iteration budget exceeded; rerun with --force"},
                     {"iterations", total},
                     {"budget", c.iteration_budget}});
    }
    return kExitBudget;
  }

  const CheckOptions opt{c.witness_cap, c.jobs};
  bool all_pass = true;
  for (int f = 1; f <= c.f_max; ++f) {
    for (const std::string& which : criteria) {
      CriterionReport rep;
      if (which == "digit") {
        rep = check_digit_criterion(spec, f, opt);
      } else if (which == "digit-abs") {
        rep = check_digit_criterion_A(spec, f, c.A, opt);
      } else if (which == "v") {
        rep = check_V_criterion(spec, f, opt);
      } else {
        const FieldTable K = FieldTable::load_or_build(c.p, f, resolve_cache_dir(c));
        rep = gauss_criterion(spec, K, opt);
      }
      emit_report(out, rep, csv);
      all_pass = all_pass && rep.pass;
    }
  }
  return all_pass ? kExitPass : kExitCriterionFail;
}

int run_search(const RunConfig& c, std::ostream& out) {
  if (c.D_max < c.D_min) return usage_error(out, "search: empty D range");
  SystemSpec::make(c.p, 2, {1}, c.twist);  // validates p and twist

  unsigned long long per_d = 0;
  for (int f = 1; f <= c.f_max; ++f)
    per_d += static_cast<unsigned long long>(pow_checked(c.p, f) - 1);
  const unsigned long long total = per_d * static_cast<unsigned long long>(c.D_max - c.D_min + 1);

  const bool csv = c.format == RunConfig::Format::Csv;
  if (csv) {
    out << "# finmono search p=" << c.p << " D=[" << c.D_min << "," << c.D_max
        << "] twist=" << to_string(c.twist) << " f_max=" << c.f_max << "\n";
    out << "D,known_case,within_hypotheses\n";
  } else {
    emit(out, meta_record(c));
    emit(out, json{{"record", "meta"}, {"iterations", total}});
  }
  if (total > c.iteration_budget && !c.force) {
    if (csv) {
      out << "# refused: iteration budget exceeded\n";
    } else {
      emit(out, json{{"record", "refusal"},
                     {"reason", "iteration budget exceeded; rerun with --force"},
                     {"iterations", total},
                     {"budget", c.iteration_budget}});
    }
    return kExitBudget;
  }

  const auto survivors = search(c.p, c.D_min, c.D_max, c.twist, c.f_max, {c.jobs});
  for (const Survivor& s : survivors) {
    if (csv) {
      out << s.D << "," << s.known.to_string() << "," << (s.within_hypotheses ? 1 : 0) << "\n";
    } else {
      json j{{"record", "survivor"},
             {"D", s.D},
             {"status", s.status()},
             {"known_case", s.known.to_string()},
             {"within_hypotheses", s.within_hypotheses}};
      if (s.known.is_known()) {
        j["q"] = s.known.q;
        if (s.known.n) j["n"] = s.known.n;
      }
      emit(out, j);
    }
  }
  if (!csv)
    emit(out, json{{"record", "verdict"}, {"survivors", survivors.size()}, {"pass", true}});
  return kExitPass;
}

std::string cyc_str(const CycInt& a) {
  const CycInt r = a.reduced();
  std::string s;
  for (size_t i = 0; i < r.coeffs().size(); ++i) {
    const mpz_class& co = r.coeffs()[i];
    if (co == 0) continue;
    if (!s.empty() && co > 0) s += "+";
    s += co.get_str();
    if (i > 0) s += "*z^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

int run_traces(const RunConfig& c, std::ostream& out) {
  SystemSpec spec = SystemSpec::make(c.p, c.D, c.d, c.twist);
  if (c.field_f < 1) return usage_error(out, "traces: --field p^f with f >= 1 is required");

  TraceTableRequest req;
  req.vary_leading = c.vary_leading;
  req.coords.resize(static_cast<size_t>(spec.r()));
  for (auto& [idx, code] : c.freeze) {
    if (idx < 1 || idx > spec.r()) return usage_error(out, "traces: freeze index out of range");
    req.coords[static_cast<size_t>(idx - 1)] = {CoordSpec::Kind::Frozen, code};
  }
  req.budget = c.force ? ~0ULL : c.iteration_budget;
  req.jobs = c.jobs;

  const FieldTable K = FieldTable::load_or_build(c.p, c.field_f, resolve_cache_dir(c));
  TraceTable table;
  try {
    table = trace_table(spec, K, req);
  } catch (const BudgetExceeded& e) {
    if (c.format == RunConfig::Format::Csv)
      out << "# refused: " << e.what() << "\n";
    else
      emit(out, json{{"record", "refusal"}, {"reason", e.what()}});
    return kExitBudget;
  }

  bool integral = true;
  for (const TraceRow& row : table.rows)
    if (row.twisted && row.twisted->status != TwistedTrace::Status::Integer) integral = false;

  // Trivial-twist integrality is a criterion verdict, not an exact division.
  bool trivial_pass = true;
  if (spec.twist == Twist::Trivial)
    trivial_pass =
        check_digit_criterion(spec, c.field_f, {.witness_cap = 0, .jobs = c.jobs}).pass;

  if (c.format == RunConfig::Format::Csv) {
    write_trace_csv(out, table);
    if (spec.twist == Twist::Trivial)
      out << "# integrality (digit criterion at f=" << c.field_f
          << "): " << (trivial_pass ? "PASS" : "FAIL") << "\n";
  } else {
    emit(out, meta_record(c));
    for (const TraceRow& row : table.rows) {
      json j{{"record", "trace_row"}, {"params", row.params}};
      if (row.twisted) {
        switch (row.twisted->status) {
          case TwistedTrace::Status::Integer:
            j["value"] = row.twisted->value.get_str();
            break;
          case TwistedTrace::Status::NotRational:
            j["status"] = "NOT_RATIONAL";
            j["value"] = cyc_str(row.twisted->residue);
            break;
          case TwistedTrace::Status::NotDivisible:
            j["status"] = "NOT_DIVISIBLE";
            j["value"] = cyc_str(row.twisted->residue);
            break;
        }
      } else {
        j["value"] = cyc_str(row.raw);
      }
      emit(out, j);
    }
    if (spec.twist == Twist::Trivial)
      emit(out, json{{"record", "verdict"},
                     {"kind", "integrality"},
                     {"criterion", "digit"},
                     {"f", c.field_f},
                     {"pass", trivial_pass}});
  }
  if (spec.twist == Twist::Quadratic) return integral ? kExitPass : kExitCriterionFail;
  return trivial_pass ? kExitPass : kExitCriterionFail;
}

json proof_json(const ProofVerdict& v) {
  json fails = json::array();
  for (const ProofFailure& f : v.failures)
    fails.push_back(json{{"x", f.x}, {"y", f.y}, {"lhs", f.lhs}, {"rhs", f.rhs},
                         {"reason", f.reason}});
  json j{{"record", "verdict"},
         {"kind", v.kind},
         {"id", v.id},
         {"range", v.range},
         {"pairs_checked", v.pairs_checked},
         {"pass", v.pass},
         {"failures", fails}};
  if (v.sampled) {
    j["sampled"] = true;
    j["seed"] = v.seed;
  }
  return j;
}

int run_prove(const RunConfig& c, std::ostream& out) {
  if (c.format == RunConfig::Format::Csv)
    return usage_error(out, "prove emits nested verdicts; use the json format");
  emit(out, meta_record(c));
  bool pass = true;

  const ProofVerdict base = verify_base_cases(c.base_f_max);
  emit(out, proof_json(base));
  pass = pass && base.pass;

  for (const CaseLemma& lemma : canonical_case_lemmas()) {
    const ProofVerdict v = verify_case_lemma(lemma);
    emit(out, proof_json(v));
    pass = pass && v.pass;
  }

  for (int f : c.induction_f) {
    const ProofVerdict v = verify_induction_assembly(f, {c.sample_budget, c.seed, c.jobs});
    emit(out, proof_json(v));
    pass = pass && v.pass;
  }
  return pass ? kExitPass : kExitCriterionFail;
}

int run_mellin(const RunConfig& c, std::ostream& out) {
  if (c.format == RunConfig::Format::Csv)
    return usage_error(out, "mellin emits exact cyclotomic values; use the json format");
  SystemSpec spec = SystemSpec::make(c.p, c.D, c.d, c.twist);
  if (c.field_f < 1) return usage_error(out, "mellin: --field p^f with f >= 1 is required");
  const FieldTable K = FieldTable::load_or_build(c.p, c.field_f, resolve_cache_dir(c));

  emit(out, meta_record(c));
  const MellinOracle oracle(spec, K);
  bool pass = true;
  unsigned long long checked = 0;

  auto check_tuple = [&](const std::vector<MultChar>& rho) {
    const auto [direct, closed] = oracle.evaluate(rho);
    const bool equal = direct == closed;
    pass = pass && equal;
    ++checked;
    if (!equal) {
      json idx = json::array();
      for (const MultChar& ch : rho) idx.push_back(ch.j);
      emit(out, json{{"record", "witness"},
                     {"kind", "mellin_mismatch"},
                     {"j", idx},
                     {"direct", cyc_str(direct)},
                     {"closed_form", cyc_str(closed)}});
    }
  };

  for (const auto& rho : oracle.admissible_tuples()) check_tuple(rho);
  if (spec.twist == Twist::Trivial) {
    // The all-trivial tuple has its own closed form.
    std::vector<MultChar> triv(static_cast<size_t>(spec.r() + 1), trivial_char(K));
    check_tuple(triv);
  }

  emit(out, json{{"record", "verdict"},
                 {"kind", "mellin"},
                 {"tuples_checked", checked},
                 {"pass", pass}});
  return pass ? kExitPass : kExitCriterionFail;
}

bool parse_rational(const std::string& s, Rational& out) {
  try {
    Rational r;
    if (r.set_str(s, 10) != 0) return false;
    if (r.get_den() == 0) return false;
    r.canonicalize();
    out = r;
    return true;
  } catch (...) {
    return false;
  }
}

bool parse_long_list(const std::string& s, std::vector<long long>& out) {
  out.clear();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) return false;
    } catch (...) {
      return false;
    }
  }
  return !out.empty();
}

}  // namespace

const char* version_string() { return FINMONO_VERSION; }

int run(const RunConfig& config, std::ostream& out) {
  try {
    switch (config.command) {
      case RunConfig::Command::Check:
        return run_check(config, out);
      case RunConfig::Command::Search:
        return run_search(config, out);
      case RunConfig::Command::Traces:
        return run_traces(config, out);
      case RunConfig::Command::Prove:
        return run_prove(config, out);
      case RunConfig::Command::Mellin:
        return run_mellin(config, out);
    }
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    emit(out, json{{"record", "refusal"}, {"reason", e.what()}});
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    return usage_error(out, e.what());
  } catch (const std::overflow_error& e) {
    return usage_error(out, e.what());
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"finmono: finite-monodromy criteria, searches, and exact trace tables"};
  app.require_subcommand(1);

  std::string d_list = "1", twist_str = "quadratic", field_str, format_str, a_str = "0";
  std::vector<std::string> freeze_strs;
  std::string induction_str = "5,6";
  std::string cache_dir_str;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--jobs", cfg.jobs, "parallelism degree")->check(CLI::PositiveNumber);
    sub->add_option("--format", format_str, "output format: json or csv");
    sub->add_option("--witness-cap", cfg.witness_cap, "max violations reported per check");
    sub->add_option("--budget", cfg.iteration_budget, "iteration budget before refusal");
    sub->add_flag("--force", cfg.force, "override the iteration budget");
    sub->add_option("--cache-dir", cache_dir_str,
                    "field table cache directory (default $FINMONO_FIELD_CACHE or ./.field-cache)");
  };
  auto add_system = [&](CLI::App* sub, bool with_D) {
    sub->add_option("--p", cfg.p, "characteristic (prime)")->required();
    if (with_D) sub->add_option("--D", cfg.D, "leading exponent D")->required();
    sub->add_option("--d", d_list, "comma-separated exponent list, starting at 1");
    sub->add_option("--twist", twist_str, "twist: trivial or quadratic");
  };

  CLI::App* check = app.add_subcommand("check", "run a finite-monodromy criterion");
  add_system(check, true);
  check->add_option("--f-max", cfg.f_max, "check every f up to this bound");
  check->add_option("--criterion", cfg.criterion, "digit | digit-abs | v | gauss | all");
  check->add_option("--A", a_str, "slack for the digit-abs criterion (rational)");
  add_common(check);

  CLI::App* search_cmd = app.add_subcommand("search", "scan D for criterion survivors");
  search_cmd->add_option("--p", cfg.p, "characteristic (prime)")->required();
  search_cmd->add_option("--D-min", cfg.D_min, "lower end of the D range")->required();
  search_cmd->add_option("--D-max", cfg.D_max, "upper end of the D range")->required();
  search_cmd->add_option("--twist", twist_str, "twist: trivial or quadratic");
  search_cmd->add_option("--f-max", cfg.f_max, "filter with every f up to this bound");
  add_common(search_cmd);

  CLI::App* traces = app.add_subcommand("traces", "tabulate exact trace values");
  add_system(traces, true);
  traces->add_option("--field", field_str, "field as p^f, e.g. 3^4")->required();
  traces->add_option("--freeze", freeze_strs,
                     "freeze a coordinate, e.g. --freeze 2=0 (1-based d index, element code)");
  traces->add_flag("--vary-leading", cfg.vary_leading,
                   "vary the leading coefficient over K^x with a chi2 prefactor");
  add_common(traces);

  CLI::App* prove = app.add_subcommand("prove", "verify the digit-inequality proof");
  prove->add_option("--base-f-max", cfg.base_f_max, "exhaustive base cases up to this f");
  prove->add_option("--induction-f", induction_str, "comma-separated induction exponents");
  prove->add_option("--sample-budget", cfg.sample_budget, "pairs before switching to sampling");
  prove->add_option("--seed", cfg.seed, "sampling seed");
  add_common(prove);

  CLI::App* mellin = app.add_subcommand("mellin", "cross-check the Mellin oracle");
  add_system(mellin, true);
  mellin->add_option("--field", field_str, "field as p^f, q <= 81")->required();
  add_common(mellin);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  if (check->parsed()) cfg.command = RunConfig::Command::Check;
  if (search_cmd->parsed()) cfg.command = RunConfig::Command::Search;
  if (traces->parsed()) cfg.command = RunConfig::Command::Traces;
  if (prove->parsed()) cfg.command = RunConfig::Command::Prove;
  if (mellin->parsed()) cfg.command = RunConfig::Command::Mellin;

  if (!parse_long_list(d_list, cfg.d)) {
    err << "invalid --d list: " << d_list << "\n";
    return kExitUsage;
  }
  if (twist_str == "trivial")
    cfg.twist = Twist::Trivial;
  else if (twist_str == "quadratic")
    cfg.twist = Twist::Quadratic;
  else {
    err << "invalid --twist: " << twist_str << "\n";
    return kExitUsage;
  }
  if (!format_str.empty()) {
    if (format_str == "json")
      cfg.format = RunConfig::Format::Json;
    else if (format_str == "csv")
      cfg.format = RunConfig::Format::Csv;
    else {
      err << "invalid --format: " << format_str << "\n";
      return kExitUsage;
    }
    cfg.format_explicit = true;
  } else if (cfg.command == RunConfig::Command::Traces) {
    cfg.format = RunConfig::Format::Csv;
  }
  if (!field_str.empty()) {
    const auto caret = field_str.find('^');
    try {
      if (caret == std::string::npos) throw std::invalid_argument("");
      const int fp = std::stoi(field_str.substr(0, caret));
      cfg.field_f = std::stoi(field_str.substr(caret + 1));
      if (fp != cfg.p) {
        err << "--field characteristic " << fp << " disagrees with --p " << cfg.p << "\n";
        return kExitUsage;
      }
    } catch (...) {
      err << "invalid --field, expected p^f: " << field_str << "\n";
      return kExitUsage;
    }
  }
  if (!parse_rational(a_str, cfg.A)) {
    err << "invalid --A: " << a_str << "\n";
    return kExitUsage;
  }
  for (const std::string& fz : freeze_strs) {
    const auto eq = fz.find('=');
    try {
      if (eq == std::string::npos) throw std::invalid_argument("");
      cfg.freeze.emplace_back(std::stoi(fz.substr(0, eq)), std::stoll(fz.substr(eq + 1)));
    } catch (...) {
      err << "invalid --freeze, expected INDEX=CODE: " << fz << "\n";
      return kExitUsage;
    }
  }
  {
    std::vector<long long> ind;
    if (!parse_long_list(induction_str, ind)) {
      err << "invalid --induction-f list: " << induction_str << "\n";
      return kExitUsage;
    }
    cfg.induction_f.assign(ind.begin(), ind.end());
  }
  if (!cache_dir_str.empty()) cfg.cache_dir = cache_dir_str;

  return run(cfg, out);
}

}  // namespace finmono
