#include "cli_app.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "acrn/error.hpp"
#include "acrn/localcft.hpp"
#include "acrn/predictor.hpp"
#include "acrn/rootnum.hpp"
#include "acrn/verify.hpp"

namespace acrn::cli {

namespace {

using nlohmann::json;

struct CtxFlags {
  std::string kind;
  int64_t p = 0;
  int j = 0;
  int f_phi = 0;
  int W_phi = 1;
  int64_t l2 = 0;
  std::string phi_pi;
  int d = 1;
  int n0 = 0;
  int64_t D = 0;
  CLI::Option* l2_opt = nullptr;
  CLI::Option* phi_pi_opt = nullptr;
  CLI::Option* n0_opt = nullptr;
  CLI::Option* D_opt = nullptr;
};

void add_ctx_options(CLI::App* sub, CtxFlags& f) {
  sub->add_option("--kind", f.kind, "split | inert | ramified")->required();
  sub->add_option("--p", f.p, "odd prime")->required();
  sub->add_option("--j", f.j, "level where the tower starts to ramify")->default_val(0);
  sub->add_option("--f-phi", f.f_phi, "conductor exponent of phi at p")->default_val(0);
  sub->add_option("--W-phi", f.W_phi, "root number of phi, +1 or -1")->default_val(1);
  f.l2_opt = sub->add_option("--l2", f.l2, "class l of phi (ramified, f-phi > 1)");
  f.phi_pi_opt = sub->add_option("--phi-pi", f.phi_pi, "phi(pi): +1, -1, +i, -i or a/b (ramified)");
  f.n0_opt = sub->add_option("--n0", f.n0, "stability level");
  f.D_opt = sub->add_option("--D", f.D, "discriminant used for explicit local characters");
}

TwistContext to_ctx(const CtxFlags& f) {
  TwistContext c;
  c.kind = parse_kind(f.kind);
  c.p = f.p;
  c.j = f.j;
  c.f_phi = f.f_phi;
  c.W_phi = f.W_phi;
  c.d = f.d;
  if (f.l2_opt->count()) c.l2 = f.l2;
  if (f.phi_pi_opt->count()) c.phi_pi = QmodZ::parse(f.phi_pi);
  if (f.n0_opt->count()) c.n0 = f.n0;
  if (f.D_opt->count()) c.D = f.D;
  c.validate();
  return c;
}

json rational_json(const Rational& r) { return rational_str(r); }

json limits_json(const LimitRecord& l) {
  return {{"P_plus_even", rational_json(l.plus_even)},
          {"P_plus_odd", rational_json(l.plus_odd)},
          {"P_minus_even", rational_json(l.minus_even)},
          {"P_minus_odd", rational_json(l.minus_odd)}};
}

void print_report_human(const SuiteReport& r, std::ostream& out) {
  for (const auto& i : r.instances) {
    out << status_name(i.status) << " " << i.key;
    if (!i.detail.empty()) out << ": " << i.detail;
    out << "\n";
  }
  out << "summary " << r.suite << " pass=" << r.count(Status::Pass) << " mismatch=" << r.count(Status::Mismatch)
      << " precision-exhausted=" << r.count(Status::Exhausted) << " error=" << r.count(Status::Error) << "\n";
  if (r.suite == "distribution") {
    bool table_ok = true;
    for (const auto& i : r.instances)
      if (i.key.rfind("table ", 0) == 0 && i.status != Status::Pass) table_ok = false;
    out << "matches_paper_table: " << (table_ok ? "true" : "false") << "\n";
  }
}

MutationKind parse_mutation(const std::string& s) {
  for (auto k : {MutationKind::None, MutationKind::LClass, MutationKind::UniformizerValue, MutationKind::SqrtMinusD,
                 MutationKind::LegendreFlip, MutationKind::Conductor, MutationKind::LevelConductor,
                 MutationKind::RootSign})
    if (mutation_name(k) == s) return k;
  throw std::invalid_argument("unknown mutation '" + s + "'");
}

int combine_exit(int a, int b) {
  if (a == kMismatch || b == kMismatch) return kMismatch;
  return std::max(a, b);
}

// Symbolic name of a limit that is 1/(p+1) or p/(p+1) for every p tried.
std::string limit_symbol(const std::vector<std::pair<int64_t, Rational>>& values) {
  std::set<std::string> names;
  for (const auto& [p, v] : values) {
    if (v == Rational(1, p + 1)) names.insert("1/(p+1)");
    else if (v == Rational(p, p + 1)) names.insert("p/(p+1)");
    else if (v == Rational(1, 2)) names.insert("1/2");
    else names.insert("p=" + std::to_string(p) + ":" + rational_str(v));
  }
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : "|") + n;
  return s;
}

std::string epsilon_symbol(int eps) { return eps == 0 ? "0" : eps == 1 ? "d" : "2d"; }

const std::map<std::string, std::string>& branch_symbols() {
  static const std::map<std::string, std::string> m{
      {"split", "1"},
      {"inert", "(-1)^(f(phi rho)-f(phi))"},
      {"ramified-trivial-rho", "1"},
      {"ramified-below", "1"},
      {"ramified-equal", "(l1 l2^-1 / p)"},
      {"ramified-above-p1", "(l1 l2^-1 / p)"},
      {"ramified-above-p3", "(l1 l2^-1 / p) (-1)^((f(rho)-f(phi))/2)"},
      {"ramified-f1-p1", "(l1 / p) phi(pi)"},
      {"ramified-f1-p3", "(l1 / p) (-1)^(f(rho)/2+1) i/phi(pi)"},
  };
  return m;
}

std::vector<std::string> write_tables(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;

  {
    const std::string path = (fs::path(dir) / "epsilon_table.csv").string();
    std::ofstream os(path);
    os << "kind,W_phi,j_plus_f_parity,n_parity,epsilon_n\n";
    auto cell = [&](Kind kind, int W, int jf, int n_par) {
      std::set<int> seen;
      for (int64_t p : {3, 5, 7}) {
        TwistContext c;
        c.kind = kind;
        c.p = p;
        c.j = jf;
        c.f_phi = kind == Kind::Split ? 0 : kind == Kind::Inert ? 2 : 2;
        c.W_phi = W;
        if (kind == Kind::Ramified) {
          c.phi_pi = p % 4 == 1 ? QmodZ::zero() : QmodZ(1, 4);
          c.l2 = 1;
        }
        int n = c.stability_level() + ((c.stability_level() % 2 == n_par) ? 0 : 1);
        seen.insert(epsilon_sequence(c, n, n).entries[0].epsilon);
      }
      if (seen.size() != 1) throw InvariantBreach("epsilon table cell depends on p");
      return epsilon_symbol(*seen.begin());
    };
    for (int W : {1, -1}) os << "split," << W << ",any,any," << cell(Kind::Split, W, 0, 0) << "\n";
    for (int jf : {0, 1})
      for (int W : {1, -1})
        for (int np : {0, 1})
          os << "inert," << W << "," << (jf ? "odd" : "even") << "," << (np ? "odd" : "even") << ","
             << cell(Kind::Inert, W, jf, np) << "\n";
    for (int W : {1, -1}) os << "ramified," << W << ",any,any," << cell(Kind::Ramified, W, 0, 0) << "\n";
    written.push_back(path);
  }

  {
    const std::string path = (fs::path(dir) / "distribution_inert.csv").string();
    std::ofstream os(path);
    os << "j_plus_f_parity,W_phi,column,computed,published,match\n";
    for (int jf : {0, 1})
      for (int W : {1, -1}) {
        std::vector<std::pair<int64_t, Rational>> cols[4], published[4];
        for (int64_t p : {3, 5, 7}) {
          TwistContext c;
          c.kind = Kind::Inert;
          c.p = p;
          c.j = jf;
          c.f_phi = 2;
          c.W_phi = W;
          auto s = distribution_series(c, 12, CountMode::CaseMachine);
          if (!s.limits) throw InvariantBreach("distribution table: series too short");
          auto t = published_table(c);
          const Rational got[4] = {s.limits->plus_odd, s.limits->plus_even, s.limits->minus_odd, s.limits->minus_even};
          const Rational tab[4] = {t.plus_odd, t.plus_even, t.minus_odd, t.minus_even};
          for (int k = 0; k < 4; ++k) {
            cols[k].emplace_back(p, got[k]);
            published[k].emplace_back(p, tab[k]);
          }
        }
        const char* names[4] = {"P+_{2k+1}", "P+_{2k}", "P-_{2k+1}", "P-_{2k}"};
        for (int k = 0; k < 4; ++k) {
          std::string a = limit_symbol(cols[k]), b = limit_symbol(published[k]);
          os << (jf ? "odd" : "even") << "," << W << "," << names[k] << "," << a << "," << b << ","
             << (a == b ? "true" : "false") << "\n";
        }
      }
    written.push_back(path);
  }

  {
    const std::string path = (fs::path(dir) / "twist_quotient_branches.csv").string();
    std::ofstream os(path);
    os << "kind,p_mod_4,f_phi,f_rho_vs_f_phi,branch,quotient\n";
    struct Rep {
      Kind kind;
      int64_t p;
      int f_phi, f_rho;
      const char* f_phi_class;
      const char* relation;
    };
    const Rep reps[] = {
        {Kind::Split, 5, 0, 0, "any", "any"},         {Kind::Inert, 5, 2, 3, "any", "any"},
        {Kind::Ramified, 5, 2, 0, "any", "f(rho)=0"},  {Kind::Ramified, 5, 4, 2, ">1", "<"},
        {Kind::Ramified, 5, 2, 2, ">1", "="},          {Kind::Ramified, 5, 2, 4, ">1", ">"},
        {Kind::Ramified, 7, 2, 4, ">1", ">"},          {Kind::Ramified, 5, 1, 2, "1", ">"},
        {Kind::Ramified, 7, 1, 2, "1", ">"},
    };
    for (const auto& r : reps) {
      auto phi_pi = r.p % 4 == 1 ? QmodZ::zero() : QmodZ(1, 4);
      auto q = local_twist_quotient(r.kind, r.p, r.f_phi, r.f_rho, predicted_twist_conductor(r.f_phi, r.f_rho), 1, 1,
                                    phi_pi);
      std::string pm4 = r.kind == Kind::Ramified ? std::to_string(r.p % 4) : "any";
      os << kind_name(r.kind) << "," << pm4 << "," << r.f_phi_class << "," << r.relation << "," << q.branch << ","
         << branch_symbols().at(q.branch) << "\n";
    }
    written.push_back(path);
  }
  return written;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
  };
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anticyclotomic root numbers: oracles, closed forms and tables"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file mirroring the flags; flags win");

  // verify
  auto* verify = app.add_subcommand("verify", "run an oracle-vs-closed-form suite");
  std::string suite, verify_format = "human", mutate = "none";
  bool sabotage = false;
  int delta = 1, mutation_draws = 0;
  uint64_t seed = 1;
  verify->add_option("suite", suite, "gauss | inert-sign | tower | twist | distribution | all")->required();
  verify->add_flag("--sabotage", sabotage, "negate every Legendre sign on the closed-form side");
  verify->add_option("--mutate", mutate, "perturb the closed-form side (negative control)");
  verify->add_option("--delta", delta, "step for conductor mutations")->default_val(1);
  verify->add_option("--mutation-check", mutation_draws, "draw this many random mutants per suite");
  verify->add_option("--seed", seed, "seed for --mutation-check")->default_val(1);
  verify->add_option("--format", verify_format, "human | json")->default_val("human");

  // root-number
  auto* rn = app.add_subcommand("root-number", "Gauss-sum root number of one local character");
  std::string rn_kind, rn_pi;
  int64_t rn_p = 0, rn_D = 0;
  int rn_f = 1, rn_m = 0, rn_N = 8;
  std::size_t rn_index = 0;
  rn->add_option("--kind", rn_kind)->required();
  rn->add_option("--p", rn_p)->required();
  auto* rn_D_opt = rn->add_option("--D", rn_D, "discriminant (default: a standard choice per kind)");
  rn->add_option("--f", rn_f, "level of the character group")->default_val(1);
  rn->add_option("--char-index", rn_index, "index among constrained characters of that level")->default_val(0);
  auto* rn_m_opt = rn->add_option("--psi-m", rn_m, "m of the additive character (default canonical)");
  auto* rn_pi_opt = rn->add_option("--chi-pi", rn_pi, "override chi(pi)");
  rn->add_option("--N", rn_N, "precision")->default_val(8);

  // twist
  auto* tw = app.add_subcommand("twist", "root number of a tower twist from the case table");
  CtxFlags tw_ctx;
  int tw_n = 0;
  int64_t tw_l1 = 0;
  add_ctx_options(tw, tw_ctx);
  tw->add_option("--n", tw_n, "level")->required();
  auto* tw_l1_opt = tw->add_option("--l1", tw_l1, "class l of phi rho (ramified)");

  // tower
  auto* tower = app.add_subcommand("tower", "structure of (1 + pi O) / (1 + pi^k O)");
  std::string tower_kind;
  int64_t tower_p = 0, tower_D = 0;
  int tower_k = 2, tower_N = 8;
  tower->add_option("--kind", tower_kind)->required();
  tower->add_option("--p", tower_p)->required();
  auto* tower_D_opt = tower->add_option("--D", tower_D);
  tower->add_option("--k", tower_k)->required();
  tower->add_option("--N", tower_N, "precision")->default_val(8);

  // epsilon
  auto* eps = app.add_subcommand("epsilon", "epsilon_n and rank increments");
  CtxFlags eps_ctx;
  int n_from = 1, n_to = 6;
  int64_t rank_base = 0;
  std::string eps_format = "csv";
  add_ctx_options(eps, eps_ctx);
  eps->add_option("--d", eps_ctx.d, "dimension [M:Q]")->default_val(1);
  eps->add_option("--n-from", n_from)->default_val(1);
  eps->add_option("--n-to", n_to)->default_val(6);
  auto* rank_opt = eps->add_option("--rank-base", rank_base, "assumed rank at level n-from - 1");
  eps->add_option("--format", eps_format, "csv | json")->default_val("csv");

  // distribution
  auto* dist = app.add_subcommand("distribution", "exact P_N^+ and P_N^- with limit classification");
  CtxFlags dist_ctx;
  int N_max = 12;
  std::string mode = "case-machine";
  add_ctx_options(dist, dist_ctx);
  dist->add_option("--N-max", N_max)->default_val(12);
  dist->add_option("--mode", mode, "case-machine | enumerated")->default_val("case-machine");

  // tables
  auto* tables = app.add_subcommand("tables", "regenerate the case tables as CSV");
  std::string out_dir = "tables";
  tables->add_option("--out", out_dir)->default_val("tables");

  std::vector<std::string> args = raw_args;
  try {
    // config file: --config anywhere before parsing; entries fill flags the user left out
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
        args.erase(args.begin() + i, args.begin() + i + 2);
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
        args.erase(args.begin() + i);
      } else {
        continue;
      }
      CLI::App* target = nullptr;
      for (const auto& a : args)
        if (!a.empty() && a[0] != '-') {
          target = app.get_subcommand_no_throw(a);
          break;
        }
      if (!target) throw std::runtime_error("--config needs a subcommand");
      for (const auto& [k, v] : read_config(path)) {
        const std::string flag = "--" + k;
        if (target->get_option_no_throw(flag) && !has_flag(args, flag)) args.push_back(flag + "=" + v);
      }
      break;
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (*verify) {
      Mutation m{parse_mutation(mutate), delta};
      if (sabotage) m.kind = MutationKind::LegendreFlip;
      std::vector<std::string> suites = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      for (const auto& s : suites) {
        const auto catalogue = applicable_mutations(s);
        if (m.kind != MutationKind::None && std::find(catalogue.begin(), catalogue.end(), m.kind) == catalogue.end())
          throw std::invalid_argument("mutation " + mutation_name(m.kind) + " does not apply to suite " + s);
      }
      if (verify_format != "human" && verify_format != "json")
        throw std::invalid_argument("--format must be human or json");
      int code = kOk;
      json all = json::array();
      for (const auto& s : suites) {
        SuiteReport r = run_suite(s, m);
        int c = r.exit_code();
        json mutants = json::array();
        if (mutation_draws > 0) {
          for (const auto& res : mutation_check(r, mutation_draws, seed)) {
            mutants.push_back({{"mutation", mutation_name(res.mutation.kind)},
                               {"delta", res.mutation.delta},
                               {"new_failures", res.new_failures},
                               {"killed", res.killed()}});
            if (!res.killed()) c = combine_exit(c, kMismatch);
          }
        }
        code = combine_exit(code, c);
        if (verify_format == "json") {
          json j = json::parse(to_json(r));
          if (mutation_draws > 0) j["mutants"] = mutants;
          all.push_back(j);
        } else {
          print_report_human(r, out);
          for (const auto& mu : mutants)
            out << "mutant " << mu["mutation"].get<std::string>() << " delta=" << mu["delta"].get<int>()
                << (mu["killed"].get<bool>() ? " killed" : " survived")
                << " new_failures=" << mu["new_failures"].get<std::size_t>() << "\n";
        }
      }
      if (verify_format == "json") out << (suites.size() == 1 ? all[0] : all).dump(2) << "\n";
      return code;
    }

    if (*rn) {
      TwistContext probe;
      probe.kind = parse_kind(rn_kind);
      probe.p = rn_p;
      auto alg = make_algebra(rn_p, probe.kind, rn_D_opt->count() ? rn_D : probe.algebra_D(), rn_N);
      auto chars = all_characters(alg, rn_f, Restriction::Kappa);
      if (rn_index >= chars.size())
        throw std::invalid_argument("--char-index out of range (" + std::to_string(chars.size()) + " characters)");
      UnitCharacter chi = chars[rn_index];
      if (rn_pi_opt->count()) chi = chi.with_uniformizer_value(QmodZ::parse(rn_pi));
      AdditiveCharSpec psi{rn_m_opt->count() ? rn_m : canonical_m(alg)};
      auto w = root_number_oracle(chi, psi);
      json j;
      j["p"] = rn_p;
      j["kind"] = std::string(kind_name(alg.kind()));
      j["D"] = alg.D();
      j["char_index"] = rn_index;
      j["char_count"] = chars.size();
      j["psi_m"] = psi.m;
      j["chi_pi"] = chi.at_uniformizer().str();
      j["exact"] = w.exact ? json(std::to_string(w.exact->num()) + "/" + std::to_string(w.exact->den())) : json(nullptr);
      j["root"] = w.exact ? json(w.exact->root_str()) : json(nullptr);
      j["approx"] = {w.approx.real(), w.approx.imag()};
      j["f"] = chi.conductor();
      j["l_chi"] = chi.conductor() > 1 && alg.kind() == Kind::Ramified ? json(l_class(chi)) : json(nullptr);
      out << j.dump(2) << "\n";
      return kOk;
    }

    if (*tw) {
      auto ctx = to_ctx(tw_ctx);
      std::optional<int64_t> l1;
      if (tw_l1_opt->count()) l1 = tw_l1;
      auto o = global_twisted_root_number(ctx, tw_n, l1);
      auto literal = theorem_root_number(ctx, tw_n, l1);
      json j;
      j["quotient"] = o.quotient;
      j["W_chi"] = o.W_chi;
      j["branch"] = o.branch;
      j["table_discrepancy"] = o.table_discrepancy;
      j["uses_legendre"] = o.uses_legendre;
      j["theorem_value"] = literal ? json(literal->first) : json(nullptr);
      out << j.dump(2) << "\n";
      return kOk;
    }

    if (*tower) {
      TwistContext probe;
      probe.kind = parse_kind(tower_kind);
      probe.p = tower_p;
      auto alg = make_algebra(tower_p, probe.kind, tower_D_opt->count() ? tower_D : probe.algebra_D(), tower_N);
      out << json::parse(to_json(qk_structure(alg, tower_k), alg)).dump(2) << "\n";
      return kOk;
    }

    if (*eps) {
      auto ctx = to_ctx(eps_ctx);
      auto seq = epsilon_sequence(ctx, n_from, n_to);
      std::vector<int64_t> ranks;
      if (rank_opt->count()) ranks = rank_sequence(ctx, rank_base, n_from, n_to);
      if (eps_format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < seq.entries.size(); ++i) {
          const auto& e = seq.entries[i];
          json row{{"n", e.n},
                   {"epsilon_n", e.epsilon},
                   {"phi_pn", e.phi_pn},
                   {"rank_delta", e.rank_delta},
                   {"regime", regime_name(e.regime)}};
          if (!ranks.empty()) row["rank"] = ranks[i];
          rows.push_back(row);
        }
        out << json{{"entries", rows}, {"mw_finitely_generated", mw_finitely_generated(ctx)}}.dump(2) << "\n";
      } else if (eps_format == "csv") {
        out << "n,epsilon_n,phi_pn,rank_delta,regime" << (ranks.empty() ? "" : ",rank") << "\n";
        for (std::size_t i = 0; i < seq.entries.size(); ++i) {
          const auto& e = seq.entries[i];
          out << e.n << "," << e.epsilon << "," << e.phi_pn << "," << e.rank_delta << "," << regime_name(e.regime);
          if (!ranks.empty()) out << "," << ranks[i];
          out << "\n";
        }
      } else {
        throw std::invalid_argument("--format must be csv or json");
      }
      return kOk;
    }

    if (*dist) {
      auto ctx = to_ctx(dist_ctx);
      auto s = distribution_series(ctx, N_max, parse_count_mode(mode));
      json series = json::array();
      for (int N = 0; N <= N_max; ++N)
        series.push_back({{"N", N}, {"P_plus", rational_json(s.P_plus[N])}, {"P_minus", rational_json(s.P_minus[N])}});
      json j;
      j["series"] = series;
      j["limits"] = s.limits ? limits_json(*s.limits) : json(nullptr);
      j["published_table"] = limits_json(published_table(ctx));
      j["matches_paper_table"] = s.matches_paper_table;
      out << j.dump(2) << "\n";
      return kOk;
    }

    if (*tables) {
      for (const auto& path : write_tables(out_dir)) out << path << "\n";
      return kOk;
    }
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << "\n";
    return kPrecisionExhausted;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kMismatch;
  }
  return kOk;
}

}  // namespace acrn::cli
