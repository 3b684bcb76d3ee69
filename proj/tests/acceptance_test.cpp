#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cycloforge/cli.hpp"
#include "cycloforge/cyclotomic.hpp"
#include "cycloforge/flatness.hpp"
#include "cycloforge/io.hpp"
#include "cycloforge/scan.hpp"
#include "cycloforge/verify.hpp"

using namespace cycloforge;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& id, const std::string& what, double limit_seconds,
               const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome r{false, ""};
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = secs < limit_seconds;
  const bool pass = r.ok && in_time;
  if (!pass) ++failures;
  char timing[96];
  std::snprintf(timing, sizeof timing, "%.3fs (limit %gs)", secs, limit_seconds);
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << id << " " << what << ": " << timing;
  if (!r.detail.empty()) std::cout << " " << r.detail;
  if (!in_time) std::cout << " over time limit";
  std::cout << std::endl;
}

double seconds_of(const std::function<void()>& fn) {
  const auto start = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome suite(const std::string& name, const SuiteOptions& o) {
  const SuiteReport rep = verify_suite(name, o);
  if (rep.passed()) {
    u64 checked = 0;
    for (const auto& p : rep.properties) checked += p.checked;
    return {true, "checked=" + std::to_string(checked)};
  }
  std::cout << format_suite(rep);
  return {false, "suite failed"};
}

const char* const kPhi35 =
    "x^{24}-x^{23}+x^{19}-x^{18}+x^{17}-x^{16}+x^{14}-x^{13}+x^{12}-x^{11}+x^{10}-x^8+x^7-x^6+x^5-x+1";

}  // namespace

int main() {
  criterion("AC1", "golden Phi_35 display", 1e-3, [] {
    const std::string tex = format_tex(phi(35, PhiAlgorithm::SparseSeries));
    if (tex != kPhi35) return Outcome{false, "got " + tex};
    std::ostringstream out, err;
    const int code = dispatch({"phi", "--n", "35", "--format", "tex"}, out, err);
    return Outcome{code == 0 && out.str() == std::string(kPhi35) + "\n", "byte-exact"};
  });

  criterion("AC2", "A(105) = 2 with [x^7] = -2", 1e-3, [] {
    const IntPolynomial f = phi(105, PhiAlgorithm::SparseSeries);
    const bool ok = poly_height(f) == 2 && f.coeff(7) == -2;
    return Outcome{ok, "A=" + poly_height(f).str() + " c7=" + f.coeff(7).str()};
  });

  criterion("AC3", "binary flat and alternating, pq <= 5000", 5, [] {
    const auto primes = primes_up_to(5000 / 3);
    u64 pairs = 0;
    for (std::size_t i = 1; i < primes.size(); ++i) {
      for (std::size_t j = i + 1; j < primes.size() && primes[i] * primes[j] <= 5000; ++j) {
        const IntPolynomial f = phi(primes[i] * primes[j], PhiAlgorithm::SparseSeries);
        if (poly_height(f) != 1 || !detail::alternating_signs(f)) {
          return Outcome{false, "n=" + std::to_string(primes[i] * primes[j])};
        }
        ++pairs;
      }
    }
    return Outcome{true, "pairs=" + std::to_string(pairs)};
  });

  criterion("AC4", "four algorithms agree, squarefree n <= 5000 (gcd n <= 1000)", 60, [] {
    u64 checked = 0;
    for (u64 n = 1; n <= 5000; ++n) {
      if (!is_squarefree(n)) continue;
      const IntPolynomial a = phi(n, PhiAlgorithm::MobiusProduct);
      if (phi(n, PhiAlgorithm::RecursiveQuotient) != a || phi(n, PhiAlgorithm::SparseSeries) != a ||
          (n <= 1000 && phi(n, PhiAlgorithm::GcdOfSparse) != a)) {
        return Outcome{false, "n=" + std::to_string(n)};
      }
      ++checked;
    }
    return Outcome{true, "n checked=" + std::to_string(checked)};
  });

  criterion("AC5", "height_drop_p3 table to 20000", 600, [] {
    const std::vector<std::array<u64, 3>> rows = {
        {4745, 3, 2},   {7469, 4, 3},   {10439, 6, 4},  {14231, 4, 3},  {14443, 5, 4}, {14707, 4, 3},
        {16027, 5, 4},  {16523, 6, 4},  {18791, 5, 4},  {19129, 6, 5},  {19499, 8, 7}};
    auto matches = [&](const ScanReport& rep) {
      if (rep.counterexamples.size() != rows.size()) return false;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const ScanRecord& r = rep.counterexamples[i];
        if (r.n_or_tuple != std::to_string(rows[i][0]) || r.heights.size() != 2 || r.heights[0] != rows[i][1] ||
            r.heights[1] != rows[i][2]) {
          return false;
        }
      }
      return true;
    };
    ScanReport one, four;
    const double t1 = seconds_of([&] { one = scan("height_drop_p3", 20000, 1); });
    const double t4 = seconds_of([&] { four = scan("height_drop_p3", 20000, 4); });
    char buf[96];
    std::snprintf(buf, sizeof buf, "rows=%zu single=%.2fs four-workers=%.2fs", one.counterexamples.size(), t1, t4);
    return Outcome{matches(one) && matches(four) && t4 < 180, buf};
  });

  criterion("AC6", "A(3*5*31*929) = 1", 30, [] {
    const IntPolynomial f = phi(3 * 5 * 31 * 929, PhiAlgorithm::SparseSeries);
    return Outcome{poly_height(f) == 1, "degree=" + std::to_string(f.degree())};
  });

  criterion("AC7", "classifier soundness, ternary n <= 30000", 900, [] {
    SuiteOptions o;
    o.max = 30000;
    o.workers = 4;
    return suite("classifier-soundness", o);
  });

  criterion("AC8", "periodicity, n in {15,21,33,35}, s,t <= 300", 120, [] {
    SuiteOptions o;
    o.n = {15, 21, 33, 35};
    o.smax = 300;
    return suite("periodicity", o);
  });

  criterion("AC9", "F_j suite, squarefree n <= 200, p <= 100", 120, [] {
    SuiteOptions o;
    o.max = 200;
    o.smax = 100;
    return suite("fj", o);
  });

  criterion("AC10", "pseudocyclotomic suite", 300, [] {
    SuiteOptions o;
    o.max = 1000;
    return suite("pseudo", o);
  });

  criterion("AC11", "A(7*43*599) = 1 cited as broadhurst-ii w=3", 10, [] {
    const Height h = height_of({7, 43, 599});
    const Verdict v = classify({7, 43, 599});
    const bool ok = h == 1 && v.status == VerdictStatus::Flat && v.citation == "broadhurst-ii w=3";
    return Outcome{ok, "A=" + h.str() + " verdict=" + format_verdict(v)};
  });

  std::cout << (failures ? "acceptance: FAIL" : "acceptance: PASS") << std::endl;
  return failures ? 1 : 0;
}
