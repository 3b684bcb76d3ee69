#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cycloforge/binary_structure.hpp"
#include "cycloforge/cyclotomic.hpp"
#include "cycloforge/error.hpp"
#include "cycloforge/fjdecomp.hpp"
#include "cycloforge/flatness.hpp"
#include "cycloforge/io.hpp"
#include "cycloforge/pseudocyclo.hpp"
#include "cycloforge/scan.hpp"
#include "cycloforge/verify.hpp"

namespace cycloforge {

namespace cli {

inline constexpr u64 kPhiGuard = 10'000'000;

inline std::vector<u64> parse_list(const std::string& flag, const std::string& text) {
  std::vector<u64> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        tok.size() > 18) {
      throw CLI::ValidationError(flag, "expected a comma-separated list of positive integers, got '" + text + "'");
    }
    out.push_back(std::stoull(tok));
  }
  if (out.empty()) throw CLI::ValidationError(flag, "empty list");
  return out;
}

inline std::string set_text(const std::set<BigInt>& s) {
  std::string out;
  for (const auto& v : s) {
    if (!out.empty()) out += ' ';
    out += v.str();
  }
  return out;
}

inline Json set_json(const std::set<BigInt>& s) {
  Json a = Json::array();
  for (const auto& v : s) a.push_back(big_to_json(v));
  return a;
}

inline std::string render(const IntPolynomial& f, const std::string& format) {
  if (format == "pretty") return format_pretty(f);
  if (format == "tex") return format_tex(f);
  if (format == "json") return poly_to_json(f).dump();
  return format_coeffs(f);
}

inline std::string render_family(const std::vector<IntPolynomial>& fs, const std::string& label,
                                 const std::string& format) {
  std::string out;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    out += label + "_" + std::to_string(j) + ": " + render(fs[j], format) + "\n";
  }
  return out;
}

inline Json family_json(const std::vector<IntPolynomial>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(poly_to_json(f));
  return a;
}

inline const std::vector<std::string>& formats() {
  static const std::vector<std::string> f = {"coeffs", "json", "pretty", "tex"};
  return f;
}

}  // namespace cli

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success, 1 domain error or failed verification, 2 usage error.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cyclotomic and pseudocyclotomic polynomial toolkit", "cycloforge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string format = "coeffs";
  bool timing = false;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember(cli::formats()));
    sub->add_flag("--timing", timing, "Print elapsed time to stderr");
  };

  u64 n = 0, p = 0, q = 0;
  std::int64_t l = 0;
  std::string alg_name, parts_text, factors_text;
  bool force = false, want_psi = false, want_factorization = false, brute = false;
  std::optional<std::int64_t> j_index;
  u64 multiplier = 1;

  auto* phi_cmd = app.add_subcommand("phi", "Cyclotomic polynomial Phi_n");
  phi_cmd->add_option("--n", n, "Index n")->required();
  phi_cmd->add_option("--alg", alg_name, "Algorithm")->check(CLI::IsMember({"mobius", "quotient", "sparse", "gcd"}));
  phi_cmd->add_flag("--force", force, "Allow n above 10^7 and gcd above 5000");
  add_format(phi_cmd);

  auto* psi_cmd = app.add_subcommand("psi", "Inverse cyclotomic polynomial Psi_n");
  psi_cmd->add_option("--n", n, "Index n")->required();
  add_format(psi_cmd);

  auto* pseudo_cmd = app.add_subcommand("pseudo", "Pseudocyclotomic polynomial of pairwise coprime parts");
  pseudo_cmd->add_option("--parts", parts_text, "Parts, e.g. 3,4,5")->required();
  pseudo_cmd->add_flag("--psi", want_psi, "Inverse pseudocyclotomic polynomial instead");
  pseudo_cmd->add_flag("--factorization", want_factorization, "List the cyclotomic factors");
  add_format(pseudo_cmd);

  auto* height_cmd = app.add_subcommand("height", "Height A(n)");
  auto* height_n = height_cmd->add_option("--n", n, "Index n");
  auto* height_f = height_cmd->add_option("--factors", factors_text, "Distinct odd primes");
  height_cmd->add_option("--multiplier", multiplier, "Extra factor built from 2 and the given primes")
      ->needs(height_f);
  height_n->excludes(height_f);
  height_cmd->add_option("--parts", parts_text, "Pseudocyclotomic parts instead")->excludes(height_n)->excludes(height_f);
  add_format(height_cmd);

  auto* vset_cmd = app.add_subcommand("vset", "Coefficient set V_n");
  auto* vset_n = vset_cmd->add_option("--n", n, "Index n");
  vset_cmd->add_option("--factors", factors_text, "Distinct primes")->excludes(vset_n);
  add_format(vset_cmd);

  auto* fj_cmd = app.add_subcommand("fj", "Residue-class slices F_j of Phi_np");
  fj_cmd->add_option("--n", n, "Index n")->required();
  fj_cmd->add_option("--p", p, "Prime p")->required();
  fj_cmd->add_option("--j", j_index, "Single slice index, any integer");
  add_format(fj_cmd);

  auto* fstar_cmd = app.add_subcommand("fstar", "Reindexed slices x^j F_0 mod Phi_n (p > n)");
  fstar_cmd->add_option("--n", n, "Index n")->required();
  fstar_cmd->add_option("--p", p, "Prime p")->required();
  add_format(fstar_cmd);

  auto* bezout_cmd = app.add_subcommand("bezout", "Split Phi_np = a g + b h");
  bezout_cmd->add_option("--n", n, "Index n")->required();
  bezout_cmd->add_option("--p", p, "Prime p")->required();
  add_format(bezout_cmd);

  auto* ld_cmd = app.add_subcommand("ldiagram", "L diagram of a coprime pair");
  ld_cmd->add_option("--p", p, "First part")->required();
  ld_cmd->add_option("--q", q, "Second part")->required();
  add_format(ld_cmd);

  std::string variant = "general";
  auto* st_cmd = app.add_subcommand("staircase", "(1 + x + ... + x^(l-1)) times the binary polynomial");
  st_cmd->add_option("--p", p, "First part")->required();
  st_cmd->add_option("--q", q, "Second part")->required();
  st_cmd->add_option("--l", l, "Length l")->required();
  st_cmd->add_option("--variant", variant, "general, or q1 when q = 1 mod p")->check(CLI::IsMember({"general", "q1"}));
  add_format(st_cmd);

  auto* cl_cmd = app.add_subcommand("classify", "Theorem-backed flatness verdict");
  cl_cmd->add_option("--factors", factors_text, "Ascending distinct odd primes")->required();
  cl_cmd->add_flag("--brute", brute, "Also compute the height when no theorem decides");
  add_format(cl_cmd);

  std::string suite;
  std::optional<u64> vmax, smax;
  std::string vn_text;
  unsigned jobs = 1;
  auto* verify_cmd = app.add_subcommand("verify", "Run a named property suite");
  verify_cmd->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--max", vmax, "Override the suite's main range");
  verify_cmd->add_option("--n", vn_text, "Comma-separated n values (periodicity)");
  verify_cmd->add_option("--smax", smax, "Prime bound (periodicity, fj)");
  verify_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  verify_cmd->add_flag("--timing", timing, "Print elapsed time to stderr");

  std::string conj_tag, cache_path = "./cycloforge-cache.jsonl", csv_path, json_path;
  u64 bound = 0;
  bool no_cache = false;
  auto* scan_cmd = app.add_subcommand("scan", "Search for counterexamples to a conjecture");
  scan_cmd->add_option("--conjecture", conj_tag, "Conjecture tag")->required();
  scan_cmd->add_option("--bound", bound, "Upper bound (0 = default)");
  scan_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  auto* cache_opt = scan_cmd->add_option("--cache", cache_path, "JSON-lines height cache");
  scan_cmd->add_flag("--no-cache", no_cache, "Run without a height cache")->excludes(cache_opt);
  scan_cmd->add_option("--csv", csv_path, "Write a CSV report here");
  scan_cmd->add_option("--json", json_path, "Write a JSON report here");
  scan_cmd->add_flag("--timing", timing, "Include elapsed time and cache statistics");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::Error& e) {
    // A missing required flag is reported before unknown ones; name the unknown flag first.
    std::vector<std::string> extra = app.remaining();
    for (auto* sub : app.get_subcommands({})) {
      for (auto& s : sub->remaining()) extra.push_back(s);
    }
    if (!extra.empty()) {
      err << "usage error: unrecognized argument: " << extra.front() << "\n";
      return 2;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  const bool json = format == "json";
  try {
    if (phi_cmd->parsed()) {
      if (n == 0) fail(ErrorKind::InvalidArgument, "n must be positive");
      if (n > cli::kPhiGuard && !force) fail(ErrorKind::InvalidArgument, "n exceeds 10^7; pass --force");
      std::optional<PhiAlgorithm> alg;
      if (!alg_name.empty()) alg = parse_phi_algorithm(alg_name);
      const IntPolynomial f = alg ? phi(n, *alg, force) : phi(n);
      if (json) {
        out << Json{{"n", n},
                    {"algorithm", std::string(to_string(alg ? *alg : default_algorithm(n)))},
                    {"degree", f.degree()},
                    {"height", big_to_json(poly_height(f))},
                    {"coeffs", poly_to_json(f)}}
                   .dump()
            << "\n";
      } else {
        out << cli::render(f, format) << "\n";
      }
    } else if (psi_cmd->parsed()) {
      if (n == 0) fail(ErrorKind::InvalidArgument, "n must be positive");
      if (n > cli::kPhiGuard) fail(ErrorKind::InvalidArgument, "n exceeds 10^7");
      const IntPolynomial f = psi(n);
      if (json) {
        out << Json{{"n", n}, {"degree", f.degree()}, {"coeffs", poly_to_json(f)}}.dump() << "\n";
      } else {
        out << cli::render(f, format) << "\n";
      }
    } else if (pseudo_cmd->parsed()) {
      const PseudoParts pp(cli::parse_list("--parts", parts_text));
      if (want_factorization) {
        const auto fac = pseudo_factorization(pp);
        Json arr = Json::array();
        std::string line;
        for (const auto& c : fac) {
          arr.push_back(c.n);
          line += (line.empty() ? "" : " ") + std::to_string(c.n);
        }
        out << (json ? Json{{"parts", pp.parts}, {"factors", arr}}.dump() : line) << "\n";
      } else {
        const IntPolynomial f = want_psi ? pseudo_psi(pp) : pseudo_phi(pp);
        if (json) {
          out << Json{{"parts", pp.parts}, {"degree", f.degree()}, {"coeffs", poly_to_json(f)}}.dump() << "\n";
        } else {
          out << cli::render(f, format) << "\n";
        }
      }
    } else if (height_cmd->parsed()) {
      Json j;
      Height h;
      if (!parts_text.empty()) {
        const auto parts = cli::parse_list("--parts", parts_text);
        h = pseudo_height(parts);
        j = {{"parts", parts}};
      } else if (!factors_text.empty()) {
        const auto fs = cli::parse_list("--factors", factors_text);
        h = height_of(fs, multiplier);
        j = {{"factors", fs}, {"multiplier", multiplier}};
      } else {
        if (n == 0) fail(ErrorKind::InvalidArgument, "n must be positive");
        h = height(n);
        j = {{"n", n}};
      }
      j["height"] = big_to_json(h);
      out << (json ? j.dump() : h.str()) << "\n";
    } else if (vset_cmd->parsed()) {
      std::set<BigInt> v;
      Json j;
      if (!factors_text.empty()) {
        const auto fs = cli::parse_list("--factors", factors_text);
        v = coefficient_set_of(fs);
        j = {{"factors", fs}};
      } else {
        if (n == 0) fail(ErrorKind::InvalidArgument, "n must be positive");
        v = coeff_set(phi(radical_reduce(n).first));
        j = {{"n", n}};
      }
      j["vset"] = cli::set_json(v);
      out << (json ? j.dump() : cli::set_text(v)) << "\n";
    } else if (fj_cmd->parsed()) {
      const FjFamily fam = fj_family(n, p);
      if (j_index) {
        const LaurentPolynomial t = fj_extended(fam, *j_index);
        if (json) {
          out << laurent_to_json(t).dump() << "\n";
        } else {
          out << "offset=" << (t.is_zero() ? 0 : t.offset()) << " " << cli::render(t.body(), format) << "\n";
        }
      } else if (json) {
        out << Json{{"n", n}, {"p", p}, {"members", cli::family_json(fam.members)}}.dump() << "\n";
      } else {
        out << cli::render_family(fam.members, "F", format);
      }
    } else if (fstar_cmd->parsed()) {
      const auto fs = fstar_family(n, p);
      if (json) {
        out << Json{{"n", n}, {"p", p}, {"members", cli::family_json(fs)}}.dump() << "\n";
      } else {
        out << cli::render_family(fs, "F*", format);
      }
    } else if (bezout_cmd->parsed()) {
      const BezoutSplit s = bezout_split(n, p);
      if (json) {
        out << Json{{"n", n}, {"p", p}, {"a", poly_to_json(s.a)}, {"b", poly_to_json(s.b)}}.dump() << "\n";
      } else {
        out << "a: " << cli::render(s.a, format) << "\nb: " << cli::render(s.b, format) << "\n";
      }
    } else if (ld_cmd->parsed()) {
      const auto pi = static_cast<std::int64_t>(p), qi = static_cast<std::int64_t>(q);
      if (json) {
        const LDiagram d = ldiagram(pi, qi);
        out << Json{{"p", p}, {"q", q}, {"mu", d.mu}, {"lambda", d.lambda}, {"residues", d.residues}}.dump()
            << "\n";
      } else {
        out << ldiagram_render(pi, qi);
      }
    } else if (st_cmd->parsed()) {
      const auto pi = static_cast<std::int64_t>(p), qi = static_cast<std::int64_t>(q);
      const IntPolynomial f = variant == "q1" ? staircase_multiple_q1(pi, qi, l) : staircase_multiple(pi, qi, l);
      out << cli::render(f, format) << "\n";
    } else if (cl_cmd->parsed()) {
      const auto fs = cli::parse_list("--factors", factors_text);
      const Verdict v = classify(fs);
      std::optional<Height> h;
      if (brute && (v.status == VerdictStatus::TheoremSilent || v.status == VerdictStatus::BoundOnly)) {
        h = height_of(fs);
      }
      if (json) {
        Json j{{"factors", fs}, {"status", std::string(to_string(v.status))}, {"theorem", v.citation},
               {"detail", v.detail}};
        if (v.bound) j["bound"] = big_to_json(*v.bound);
        if (h) j["height"] = big_to_json(*h);
        out << j.dump() << "\n";
      } else {
        out << format_verdict(v);
        if (h) out << " height=" << h->str();
        out << "\n";
      }
    } else if (verify_cmd->parsed()) {
      SuiteOptions o;
      o.max = vmax;
      o.smax = smax;
      o.workers = jobs;
      if (!vn_text.empty()) o.n = cli::parse_list("--n", vn_text);
      const SuiteReport rep = verify_suite(suite, o);
      out << format_suite(rep);
      if (timing) {
        err << "elapsed_ms="
            << std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count()
            << "\n";
      }
      return rep.passed() ? 0 : 1;
    } else if (scan_cmd->parsed()) {
      const Conjecture conj = parse_conjecture(conj_tag);
      ScanOptions o;
      o.bound = bound;
      o.workers = jobs;
      if (!no_cache) {
        std::ofstream probe(cache_path, std::ios::app);
        if (!probe) fail(ErrorKind::IoError, "cache '" + cache_path + "' is not writable; pass --no-cache to run without one");
        o.journal = cache_path;
      }
      const ScanReport rep = scan(conj, o);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) fail(ErrorKind::IoError, "cannot write '" + csv_path + "'");
        f << report_csv(rep);
      }
      if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f) fail(ErrorKind::IoError, "cannot write '" + json_path + "'");
        f << report_json(rep, timing).dump(2) << "\n";
      }
      out << "conjecture=" << rep.conjecture << " range=" << rep.lo << ".." << rep.hi << " checked=" << rep.checked
          << " counterexamples=" << rep.counterexamples.size() << "\n";
      for (const auto& r : rep.counterexamples) {
        std::string hs;
        for (const auto& h : r.heights) hs += (hs.empty() ? "" : ";") + h.str();
        out << r.id << " " << r.n_or_tuple << " " << hs << " " << r.verdict << "\n";
      }
      if (timing) {
        err << "elapsed_s=" << rep.elapsed_seconds << " computed=" << rep.computed << " reused=" << rep.reused
            << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    const bool usage = e.kind() == ErrorKind::UnknownSuite || e.kind() == ErrorKind::UnknownConjecture;
    return usage ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  if (timing) {
    err << "elapsed_ms="
        << std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count() /
               1000.0
        << "\n";
  }
  return 0;
}

}  // namespace cycloforge
