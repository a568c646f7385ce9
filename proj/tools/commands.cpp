#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "twistmap/acceptance.hpp"
#include "twistmap/classmaps.hpp"
#include "twistmap/errors.hpp"
#include "twistmap/oracle.hpp"
#include "twistmap/parallel.hpp"
#include "twistmap/semilinear.hpp"
#include "twistmap/varieties.hpp"
#include "twistmap/weyl.hpp"

namespace twistmap::cli {

using nlohmann::json;

namespace {

struct Options {
  bool json_out = false;
  std::string out_file;
  int threads = 0;

  std::string partition;
  int n = 0;
  int characteristic = 2;
  int q = 2;
  std::vector<int> ms{1};
  int base_degree = 1;
  int max_n = 12;
  bool printed = false;
  std::string table;
  std::string class_name;
  std::string w;
  bool list = false;
  double budget = 3600.0;
  std::vector<int> only;
};

/// Report plus the text rendering and the verdict.
struct Report {
  json data;
  std::string text;
  bool falsified = false;
};

const FiniteField& field_of(int characteristic, int degree) {
  if (!is_prime(characteristic)) throw std::invalid_argument("--char must be prime");
  if (degree < 1) throw std::invalid_argument("--m must be positive");
  return FiniteField::get(characteristic, degree);
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

Report cmd_phi_prime(const Options& o) {
  const Partition lambda = Partition::parse(o.partition);
  const Partition out = phi_prime(lambda);
  return {{{"input", lambda.to_string()}, {"output", out.to_string()}}, out.to_string(), false};
}

Report cmd_psi_prime(const Options& o) {
  const Partition gamma = Partition::parse(o.partition);
  const PsiPrimeResult r = psi_prime(gamma);
  json fiber = json::array();
  std::string text = r.label.cycle_type.to_string() + "\n";
  for (const auto& [lambda, mu] : r.fiber) {
    fiber.push_back({{"label", lambda.to_string()}, {"mu", mu}});
    text += "  " + lambda.to_string() + " mu=" + std::to_string(mu) + "\n";
  }
  json data = {{"input", gamma.to_string()}, {"output", r.label.cycle_type.to_string()}, {"mu", r.mu}, {"fiber", fiber}};
  text.pop_back();
  return {data, text, false};
}

Report cmd_phi_elliptic(const Options& o) {
  const Partition p = Partition::parse(o.partition);
  const DecoratedPartition d = phi_char2_elliptic(p);
  return {{{"input", p.to_string()}, {"output", d.to_string()}, {"n", odd_model_dimension(p)}}, d.to_string(), false};
}

Report cmd_identity_check(const Options& o) {
  if (o.max_n < 1) throw std::invalid_argument("--max-n must be positive");
  json rows = json::array();
  std::ostringstream text;
  text << "p\tell\td\tinversions" << (o.printed ? "\tell_printed" : "") << "\n";
  bool all = true;
  for (int n = 1; n <= o.max_n; ++n) {
    for (const auto& p : model_partitions(n)) {
      const LengthDimension r = length_dimension_identity(p);
      const bool ok = o.printed ? r.printed_holds() : r.holds();
      all = all && ok;
      rows.push_back({{"p", p.to_string()},
                      {"n", n},
                      {"ell", r.ell},
                      {"ell_printed", r.ell_printed},
                      {"d", r.d},
                      {"inversions", r.inversions},
                      {"equal", ok}});
      text << p.to_string() << "\t" << r.ell << "\t" << r.d << "\t" << r.inversions;
      if (o.printed) text << "\t" << r.ell_printed;
      text << (ok ? "" : "\tMISMATCH") << "\n";
    }
  }
  text << (all ? "all rows equal" : "identity fails");
  return {{{"formula", o.printed ? "printed" : "corrected"}, {"max_n", o.max_n}, {"rows", rows}, {"all_equal", all}},
          text.str(), !all};
}

Report cmd_table(const Options& o) {
  const ExceptionalCase c = parse_exceptional_case(o.table);
  std::ostringstream text;
  json entries = json::array();
  if (!o.class_name.empty()) {
    const PhiTableEntry& e = exceptional_lookup(c, o.class_name);
    text << e.class_name << " -> " << e.target_name << (e.distinguished ? " dist" : "");
    return {{{"table", o.table},
             {"class", e.class_name},
             {"target", e.target_name},
             {"distinguished", e.distinguished}},
            text.str(),
            false};
  }
  for (const auto& target : exceptional_targets(c)) {
    std::string sources;
    bool dist = false;
    for (const auto& e : exceptional_phi_table(c)) {
      if (e.target_name != target) continue;
      if (!sources.empty()) sources += ", ";
      sources += e.class_name;
      dist = dist || e.distinguished;
    }
    text << sources << " -> " << target << (dist ? " dist" : "") << "\n";
  }
  for (const auto& e : exceptional_phi_table(c)) {
    entries.push_back({{"class", e.class_name}, {"target", e.target_name}, {"distinguished", e.distinguished}});
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(table_checksum(c)));
  text << "checksum " << hex;
  return {{{"table", o.table}, {"entries", entries}, {"targets", exceptional_targets(c)}, {"checksum", hex}},
          text.str(), false};
}

Report cmd_z_perm(const Options& o) {
  const Partition p = Partition::parse(o.partition);
  const int n = odd_model_dimension(p);
  if (o.n != 0 && o.n != n) {
    throw std::invalid_argument("p=" + p.to_string() + " gives n=" + std::to_string(n) + ", not " + std::to_string(o.n));
  }
  const Permutation z = z_perm(p);
  const Permutation ww = longest(n) * z;
  json cycles = json::array();
  for (const auto& c : ww.cycles()) cycles.push_back(c);
  return {{{"input", p.to_string()},
           {"n", n},
           {"output", z.to_string()},
           {"length", length(z)},
           {"twisted_cycles", cycles},
           {"expected_cycles", expected_z_cycles(p)}},
          z.to_string(), false};
}

Report cmd_standard_model(const Options& o) {
  const Partition p = Partition::parse(o.partition);
  const FiniteField& f = field_of(o.characteristic, o.ms.front());
  const SemilinearElement g = build_standard_g(p, FieldSpec::linear(f));
  const Partition jt = jordan_type(phi_matrix(g));
  json data = {{"input", p.to_string()},
               {"field", f.name()},
               {"n", g.dim()},
               {"g", matrix_json(g.matrix())},
               {"g_prime", matrix_json(standard_g_prime(p, f))},
               {"jordan_type", jt.to_string()}};
  std::ostringstream text;
  text << "g over " << f.name() << ":\n" << g.matrix().to_string() << "\njordan type of g*g: " << jt.to_string();
  bool falsified = !(check_of(g).matrix() == standard_g_prime(p, f)) || !(jt == elliptic_jordan_type(p));
  if (f.characteristic() == 2) {
    const DecoratedPartition inv = class_invariant(g);
    data["invariant"] = inv.to_string();
    text << "\ninvariant: " << inv.to_string();
    falsified = falsified || !(inv == phi_char2_elliptic(p));
  } else {
    json values = json::array();
    for (int t = 0; t < p.length(); ++t) {
      const Elem v = standard_form_value(g, p, t);
      values.push_back(v);
      falsified = falsified || v == 0;
    }
    data["form_values"] = values;
    text << "\nform values: " << values.dump();
  }
  data["ok"] = !falsified;
  return {data, text.str(), falsified};
}

Report cmd_count_dl(const Options& o) {
  const Partition p = Partition::parse(o.partition);
  const int n = odd_model_dimension(p);
  if (o.n != 0 && o.n != n) throw std::invalid_argument("p=" + p.to_string() + " gives n=" + std::to_string(n));
  json levels = json::array();
  std::ostringstream text;
  bool falsified = false;
  for (int m : o.ms) {
    const UnitaryCount u = count_unitary_dl(n, o.q, p, m);
    json fibers = json::object();
    for (const auto& [size, count] : u.fibers) fibers[std::to_string(size)] = count;
    levels.push_back({{"m", m},
                      {"field_size", u.field_size},
                      {"x_flags", u.x_flags},
                      {"x_lines", u.x_lines},
                      {"x_tilde", u.x_tilde},
                      {"lambda_rational", u.lambda_rational},
                      {"lambda_full", u.lambda_full},
                      {"free_action", u.free_action},
                      {"product_formula", u.product_formula()},
                      {"fibers", fibers}});
    falsified = falsified || u.x_flags != u.x_lines || !u.free_action;
    text << "F" << u.field_size << ": X=" << u.x_flags << " lines=" << u.x_lines << " X~=" << u.x_tilde
         << " |Lambda|=" << u.lambda_rational << "/" << u.lambda_full << " free=" << (u.free_action ? "yes" : "no")
         << " fibers=" << fibers.dump() << "\n";
  }
  std::string t = text.str();
  if (!t.empty()) t.pop_back();
  return {{{"input", p.to_string()}, {"n", n}, {"q", o.q}, {"levels", levels}}, t, falsified};
}

Report cmd_enumerate_xg(const Options& o) {
  const Partition p = Partition::parse(o.partition);
  const FiniteField& f = field_of(o.characteristic, o.ms.front());
  const SemilinearElement g = build_standard_g(p, FieldSpec::linear(f));
  const auto xs = enumerate_X_g(g, p);
  const auto ss = enumerate_S_g(g, p);
  bool round_trip = true;
  json points = json::array();
  for (const auto& pair : xs) {
    const CanonicalVectors cv = flags_to_lines(g, pair, p);
    round_trip = round_trip && lines_to_flags(g, cv.lines, p) == pair;
    if (o.list) points.push_back({{"V", pair.first.to_string()}, {"V_prime", pair.second.to_string()}});
  }
  for (const auto& lines : ss) {
    round_trip = round_trip && flags_to_lines(g, lines_to_flags(g, lines, p), p).lines.same_lines(lines, f);
  }
  json data = {{"input", p.to_string()},
               {"field", f.name()},
               {"x_g", xs.size()},
               {"s_g", ss.size()},
               {"round_trip", round_trip}};
  if (o.list) data["points"] = points;
  std::ostringstream text;
  text << "|X_g|=" << xs.size() << " |S_g|=" << ss.size() << " round trips " << (round_trip ? "ok" : "FAILED");
  if (o.list) {
    for (const auto& pair : xs) text << "\n" << pair.first.to_string() << " | " << pair.second.to_string();
  }
  return {data, text.str(), !round_trip || xs.size() != ss.size()};
}

Permutation parse_w(const std::string& spec, int n) {
  if (spec.rfind("z:", 0) == 0) {
    const Partition p = Partition::parse(spec.substr(2));
    if (odd_model_dimension(p) != n) throw std::invalid_argument("w=" + spec + " does not live in S_" + std::to_string(n));
    return z_perm(p);
  }
  const Permutation w = Permutation::parse(spec);
  if (w.size() != n) throw std::invalid_argument("w has size " + std::to_string(w.size()));
  return w;
}

json sigma_json(const SigmaReport& r) {
  json levels = json::array();
  for (const auto& level : r.levels) {
    json members = json::array();
    for (const auto& inv : level.members) members.push_back(invariant_to_string(inv));
    levels.push_back({{"m", level.m}, {"field", level.field}, {"members", members}});
  }
  json united = json::array();
  for (const auto& inv : r.united) united.push_back(invariant_to_string(inv));
  json late = json::array();
  for (const auto& inv : r.late) late.push_back(invariant_to_string(inv));
  return {{"w", r.w.to_string()}, {"levels", levels}, {"sigma", united}, {"late", late}, {"monotone", r.monotone}};
}

Report cmd_oracle_classes(const Options& o) {
  const ClassInventory inv = enumerate_classes(o.n, field_of(o.characteristic, o.base_degree));
  json classes = json::array();
  std::ostringstream text;
  text << inv.elements << " elements in " << inv.classes.size() << " classes, |GL|=" << inv.group_order;
  for (const auto& c : inv.classes) {
    json orbits = json::array();
    for (const auto& r : c.rational_orbits) orbits.push_back(r.size);
    classes.push_back({{"invariant", invariant_to_string(c.invariant)},
                       {"size", c.size},
                       {"rational_orbits", orbits},
                       {"representative", matrix_json(c.representative.matrix())}});
    text << "\n" << invariant_to_string(c.invariant) << " size=" << c.size << " orbits=" << orbits.dump();
  }
  return {{{"n", o.n}, {"field", inv.field.header()}, {"elements", inv.elements}, {"group_order", inv.group_order},
           {"classes", classes}},
          text.str(), false};
}

Report cmd_oracle_sigma(const Options& o, std::ostream& err) {
  const ClassInventory inv = enumerate_classes(o.n, field_of(o.characteristic, o.base_degree));
  const Permutation w = parse_w(o.w, o.n);
  const SigmaReport r = sigma_w_D(w, inv, o.ms, {}, [&](const std::string& s) { err << s << "\n"; });
  std::ostringstream text;
  text << "Sigma_w for w=" << w.to_string() << ":";
  for (const auto& g : r.united) text << " [" << invariant_to_string(g) << "]";
  json data = sigma_json(r);
  data["n"] = o.n;
  data["field"] = inv.field.header();
  return {data, text.str(), false};
}

Report cmd_oracle_verify(const Options& o, std::ostream& err) {
  const ClassInventory inv = enumerate_classes(o.n, field_of(o.characteristic, o.base_degree));
  const EllipticReport rep = verify_all_elliptic(inv, o.ms, {}, [&](const std::string& s) { err << s << "\n"; });
  json per = json::array();
  std::ostringstream text;
  for (const auto& r : rep.per_class) {
    json minima = json::array();
    for (const auto& m : r.minima) minima.push_back(invariant_to_string(m));
    json item = sigma_json(r.sigma);
    item["p"] = r.p.to_string();
    item["minima"] = minima;
    item["expected"] = invariant_to_string(r.expected);
    item["unique_minimum"] = r.unique_minimum;
    item["matches_expected"] = r.matches_expected;
    item["closure_below_all"] = r.closure_below_all;
    per.push_back(item);
    text << "p=" << r.p.to_string() << " minimum " << minima.dump() << " expected " << invariant_to_string(r.expected)
         << (r.ok() ? " ok" : " FAILED") << "\n";
  }
  text << (rep.distinct_minima ? "distinct minima" : "minima NOT distinct");
  return {{{"n", o.n}, {"field", inv.field.header()}, {"classes", per}, {"distinct_minima", rep.distinct_minima},
           {"ok", rep.ok()}},
          text.str(), !rep.ok()};
}

Report cmd_verify_all(const Options& o, std::ostream& err) {
  AcceptanceOptions opts;
  opts.budget_seconds = o.budget;
  opts.only = o.only;
  opts.log = [&](const std::string& s) { err << s << "\n"; };
  const auto results = run_acceptance(opts);
  json rows = json::array();
  std::ostringstream text;
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"skipped", r.skipped}, {"detail", r.detail},
                    {"seconds", r.seconds}});
    text << format_result(r) << "\n";
  }
  std::string t = text.str();
  if (!t.empty()) t.pop_back();
  return {{{"criteria", rows}, {"all_pass", all}}, t, !all};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Twisted class maps, finite-field models and brute-force oracles"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json_out, "JSON output");
  app.add_option("--out", o.out_file, "Also write the JSON report to this file");
  app.add_option("--threads", o.threads, "Worker threads (0 = available parallelism)")->check(CLI::NonNegativeNumber);

  auto partition_arg = [&](CLI::App* sub, const char* what) {
    sub->add_option("partition,-p,--partition", o.partition, what)->required();
  };
  auto field_opts = [&](CLI::App* sub) {
    sub->add_option("--char,--field", o.characteristic, "Field characteristic")->check(CLI::PositiveNumber);
    sub->add_option("-m,--m", o.ms, "Field degree(s), comma separated")->delimiter(',')->check(CLI::PositiveNumber);
  };

  auto* phi = app.add_subcommand("phi-prime", "Apply phi' to a partition");
  partition_arg(phi, "lambda, e.g. 5,4,3,3,2,2,1,1");
  auto* psi = app.add_subcommand("psi-prime", "mu-minimal preimage under phi'");
  partition_arg(psi, "gamma");
  auto* ell = app.add_subcommand("phi-elliptic", "Char-2 class attached to an elliptic p");
  partition_arg(ell, "p");
  auto* ident = app.add_subcommand("identity-check", "Length versus centralizer dimension");
  ident->add_option("--max-n", o.max_n, "Largest n")->check(CLI::PositiveNumber);
  ident->add_flag("--printed", o.printed, "Use the printed -(s^2-s)/2 term");
  auto* table = app.add_subcommand("table", "Exceptional phi tables");
  table->add_option("case", o.table, "e6 or d4")->required();
  table->add_option("--class", o.class_name, "Look up one class");
  auto* zp = app.add_subcommand("z-perm", "The minimal-length permutation attached to p");
  partition_arg(zp, "p");
  zp->add_option("-n", o.n, "Expected n");
  auto* std_model = app.add_subcommand("standard-model", "Binomial model of p");
  partition_arg(std_model, "p");
  field_opts(std_model);
  auto* dl = app.add_subcommand("count-dl", "Unitary model point counts");
  partition_arg(dl, "p");
  dl->add_option("-q,--q", o.q, "q")->check(CLI::PositiveNumber);
  dl->add_option("-m,--m", o.ms, "Counts over F_{q^{2m}}")->delimiter(',')->check(CLI::PositiveNumber);
  dl->add_option("-n", o.n, "Expected n");
  auto* xg = app.add_subcommand("enumerate-xg", "Points of X_g and S_g for the binomial model");
  partition_arg(xg, "p");
  field_opts(xg);
  xg->add_flag("--list", o.list, "List the points");

  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
  oracle->require_subcommand(1);
  auto* classes = oracle->add_subcommand("classes", "Class inventory");
  auto* sigma = oracle->add_subcommand("sigma", "Sigma_{w,D} by exhaustion");
  auto* verify = oracle->add_subcommand("verify", "Unique minimum of Sigma for every elliptic class");
  for (auto* sub : {classes, sigma, verify}) {
    sub->add_option("-n", o.n, "Dimension")->required()->check(CLI::PositiveNumber);
    sub->add_option("-e,--degree", o.base_degree, "Base field F_{p^e}")->check(CLI::PositiveNumber);
    field_opts(sub);
  }
  sigma->add_option("-w", o.w, "Permutation images (2,1,3) or z:<p>")->required();

  auto* all = app.add_subcommand("verify-all", "Run the acceptance criteria");
  all->add_option("--budget", o.budget, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
  all->add_option("--only", o.only, "Criterion ids")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  set_thread_count(o.threads);

  Report report;
  std::string command;
  try {
    if (*phi) {
      command = "phi-prime";
      report = cmd_phi_prime(o);
    } else if (*psi) {
      command = "psi-prime";
      report = cmd_psi_prime(o);
    } else if (*ell) {
      command = "phi-elliptic";
      report = cmd_phi_elliptic(o);
    } else if (*ident) {
      command = "identity-check";
      report = cmd_identity_check(o);
    } else if (*table) {
      command = "table";
      report = cmd_table(o);
    } else if (*zp) {
      command = "z-perm";
      report = cmd_z_perm(o);
    } else if (*std_model) {
      command = "standard-model";
      report = cmd_standard_model(o);
    } else if (*dl) {
      command = "count-dl";
      report = cmd_count_dl(o);
    } else if (*xg) {
      command = "enumerate-xg";
      report = cmd_enumerate_xg(o);
    } else if (*classes) {
      command = "oracle classes";
      report = cmd_oracle_classes(o);
    } else if (*sigma) {
      command = "oracle sigma";
      report = cmd_oracle_sigma(o, err);
    } else if (*verify) {
      command = "oracle verify";
      report = cmd_oracle_verify(o, err);
    } else if (*all) {
      command = "verify-all";
      report = cmd_verify_all(o, err);
    }
  } catch (const CheckFailure& e) {
    err << "check failed: " << e.what() << "\n";
    return kFalsified;
  } catch (const BoundExceeded& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  report.data["command"] = command;
  report.data["status"] = report.falsified ? "falsified" : "ok";
  if (o.json_out) {
    out << report.data.dump(2) << "\n";
  } else {
    out << report.text << "\n";
  }
  if (!o.out_file.empty()) {
    std::ofstream file(o.out_file);
    if (!file) {
      err << "cannot write " << o.out_file << "\n";
      return kUsage;
    }
    file << report.data.dump(2) << "\n";
  }
  return report.falsified ? kFalsified : kOk;
}

}  // namespace twistmap::cli
