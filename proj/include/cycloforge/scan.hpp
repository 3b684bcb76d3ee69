#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "cycloforge/cyclotomic.hpp"
#include "cycloforge/error.hpp"
#include "cycloforge/flatness.hpp"
#include "cycloforge/io.hpp"
#include "cycloforge/number_theory.hpp"
#include "cycloforge/pseudocyclo.hpp"

namespace cycloforge {

enum class ScanKind {
  NotFlat,
  BroadhurstIII,
  PqrsAllFlat,
  Pqrs2,
  PqrstNotFlat,
  HeightDrop,
  NpMonotonic,
  NpGtN,
  PseudoNotFlat,
  PseudoBroadhurstIII,
  PlusMinusOneOnly,
};

struct Conjecture {
  ScanKind kind = ScanKind::NotFlat;
  u64 prime = 0;  // the multiplier P for the A(nP) scans
  std::string tag;
};

inline Conjecture parse_conjecture(const std::string& tag) {
  static const std::vector<std::pair<std::string, ScanKind>> fixed = {
      {"notflat", ScanKind::NotFlat},
      {"broadhurst-iii", ScanKind::BroadhurstIII},
      {"pqrs-allflat", ScanKind::PqrsAllFlat},
      {"pqrs2", ScanKind::Pqrs2},
      {"pqrst-notflat", ScanKind::PqrstNotFlat},
      {"pseudo-notflat", ScanKind::PseudoNotFlat},
      {"pseudo-broadhurst-iii", ScanKind::PseudoBroadhurstIII},
      {"pm1only", ScanKind::PlusMinusOneOnly},
  };
  for (const auto& [name, kind] : fixed) {
    if (tag == name) return {kind, 0, tag};
  }
  static const std::vector<std::pair<std::string, ScanKind>> prefixed = {
      {"height_drop_p", ScanKind::HeightDrop},
      {"np_monotonic_p", ScanKind::NpMonotonic},
      {"np_gt_n_p", ScanKind::NpGtN},
  };
  for (const auto& [prefix, kind] : prefixed) {
    if (tag.rfind(prefix, 0) != 0) continue;
    const std::string digits = tag.substr(prefix.size());
    if (digits.empty() || digits.size() > 9 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      break;
    }
    const u64 p = std::stoull(digits);
    if (!is_prime(p)) fail(ErrorKind::UnknownConjecture, tag + ": " + digits + " is not prime");
    return {kind, p, tag};
  }
  fail(ErrorKind::UnknownConjecture, "unknown conjecture '" + tag + "'");
}

inline std::vector<std::string> conjecture_tags() {
  return {"notflat",       "broadhurst-iii",        "pqrs-allflat",  "pqrs2",
          "pqrst-notflat", "height_drop_p<P>",      "np_monotonic_p<P>", "np_gt_n_p<P>",
          "pseudo-notflat", "pseudo-broadhurst-iii", "pm1only"};
}

/// Default search bound per scan, sized to finish in seconds to minutes on one core.
inline u64 default_bound(ScanKind k) {
  switch (k) {
    case ScanKind::NotFlat: return 10000;
    case ScanKind::BroadhurstIII: return 30000;
    case ScanKind::PqrsAllFlat: return 100000;
    case ScanKind::Pqrs2: return 10000000;
    case ScanKind::PqrstNotFlat: return 200000;
    case ScanKind::HeightDrop:
    case ScanKind::NpMonotonic:
    case ScanKind::NpGtN: return 20000;
    case ScanKind::PseudoNotFlat:
    case ScanKind::PseudoBroadhurstIII: return 3000;
    case ScanKind::PlusMinusOneOnly: return 30000;
  }
  return 10000;
}

/// One hit or counterexample. `subjects` are the factor lists (or pseudo parts)
/// whose heights are listed in `heights`, in the same order.
struct ScanRecord {
  std::string id;
  std::string n_or_tuple;
  bool pseudo = false;
  std::vector<std::vector<u64>> subjects;
  std::vector<Height> heights;
  std::string verdict;
};

struct ScanReport {
  std::string conjecture;
  u64 lo = 1, hi = 0;
  u64 checked = 0;
  u64 computed = 0;  // heights computed in this run
  u64 reused = 0;    // heights taken from the journal
  std::vector<ScanRecord> counterexamples;
  double elapsed_seconds = 0;
  bool complete = false;
};

struct ScanOptions {
  u64 bound = 0;  // 0 selects default_bound
  unsigned workers = 1;
  std::optional<std::string> journal;  // JSON-lines height cache
  std::size_t chunk = 32;
};

/// Append-only JSON-lines height cache {"n","factors","degree","height"}.
/// Reads existing records on open; new records go through one writer thread.
class HeightJournal {
 public:
  HeightJournal() = default;

  explicit HeightJournal(const std::string& path) : path_(path) {
    {
      std::ifstream in(path);
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
          const Json j = Json::parse(line);
          known_[j.at("n").get<u64>()] = big_from_json(j.at("height"));
        } catch (const std::exception&) {
          // a torn final line from an interrupted run
        }
      }
    }
    bool torn = false;
    {
      std::ifstream tail(path, std::ios::binary | std::ios::ate);
      if (tail && tail.tellg() > 0) {
        tail.seekg(-1, std::ios::end);
        torn = tail.get() != '\n';
      }
    }
    out_.open(path, std::ios::app);
    if (!out_) fail(ErrorKind::IoError, "cannot write cache file " + path);
    if (torn) out_ << '\n';
    writer_ = std::thread([this] { drain(); });
  }

  HeightJournal(const HeightJournal&) = delete;
  HeightJournal& operator=(const HeightJournal&) = delete;

  ~HeightJournal() { close(); }

  std::optional<Height> lookup(u64 n) const {
    std::shared_lock lock(known_mutex_);
    auto it = known_.find(n);
    if (it == known_.end()) return std::nullopt;
    return it->second;
  }

  void record(u64 n, const std::vector<u64>& factors, u64 degree, const Height& h) {
    {
      std::unique_lock lock(known_mutex_);
      if (!known_.emplace(n, h).second) return;
    }
    if (!writer_.joinable()) return;
    Json j{{"n", n}, {"factors", factors}, {"degree", degree}, {"height", big_to_json(h)}};
    {
      std::lock_guard lock(queue_mutex_);
      queue_.push_back(j.dump());
    }
    cv_.notify_one();
  }

  void close() {
    if (!writer_.joinable()) return;
    {
      std::lock_guard lock(queue_mutex_);
      done_ = true;
    }
    cv_.notify_one();
    writer_.join();
  }

  std::size_t size() const {
    std::shared_lock lock(known_mutex_);
    return known_.size();
  }

 private:
  void drain() {
    std::unique_lock lock(queue_mutex_);
    for (;;) {
      cv_.wait(lock, [this] { return done_ || !queue_.empty(); });
      std::deque<std::string> batch;
      batch.swap(queue_);
      const bool finished = done_;
      lock.unlock();
      for (const auto& line : batch) out_ << line << '\n';
      out_.flush();
      lock.lock();
      if (finished && queue_.empty()) return;
    }
  }

  std::string path_;
  mutable std::shared_mutex known_mutex_;
  std::unordered_map<u64, Height> known_;
  std::ofstream out_;
  std::mutex queue_mutex_;
  std::condition_variable cv_;
  std::deque<std::string> queue_;
  bool done_ = false;
  std::thread writer_;
};

namespace detail {

/// Factorizations of the odd squarefree n in [lo, hi] with order in
/// [min_order, max_order] and gcd(n, coprime_to) = 1, ascending by n.
inline std::vector<std::vector<u64>> odd_squarefree(u64 lo, u64 hi, int min_order, int max_order,
                                                    u64 coprime_to = 1) {
  std::vector<std::vector<u64>> out;
  if (hi < 3) return out;
  std::vector<std::uint32_t> spf(hi + 1, 0);
  for (u64 i = 2; i <= hi; ++i) {
    if (spf[i]) continue;
    for (u64 j = i; j <= hi; j += i) {
      if (!spf[j]) spf[j] = static_cast<std::uint32_t>(i);
    }
  }
  for (u64 n = std::max<u64>(lo, 3) | 1; n <= hi; n += 2) {
    if (std::gcd(n, coprime_to) != 1) continue;
    std::vector<u64> fs;
    u64 m = n;
    bool ok = true;
    while (m > 1) {
      const u64 p = spf[m];
      m /= p;
      if (m % p == 0) {
        ok = false;
        break;
      }
      fs.push_back(p);
      if (static_cast<int>(fs.size()) > max_order) {
        ok = false;
        break;
      }
    }
    if (ok && static_cast<int>(fs.size()) >= min_order) out.push_back(std::move(fs));
  }
  return out;
}

/// Prime chains p < q < r < s with r = +-1 mod pq, s = +-1 mod pqr, pqrs <= bound.
inline std::vector<std::vector<u64>> quaternary_chains(u64 bound) {
  std::vector<std::vector<u64>> out;
  auto next_pm1 = [](u64 m, u64 above, u64 limit, const auto& take) {
    for (u64 k = m; k - 1 <= limit; k += m) {
      for (u64 c : {k - 1, k + 1}) {
        if (c > above && c <= limit && is_prime(c)) take(c);
      }
    }
  };
  for (u64 p = 3; p * p * p * p <= bound; p += 2) {
    if (!is_prime(p)) continue;
    for (u64 q = p + 2; p * q * q * q <= bound; q += 2) {
      if (!is_prime(q)) continue;
      const u64 pq = p * q;
      next_pm1(pq, q, bound / pq, [&](u64 r) {
        const u64 pqr = pq * r;
        if (r > bound / pqr) return;
        next_pm1(pqr, r, bound / pqr, [&](u64 s) { out.push_back({p, q, r, s}); });
      });
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return product(a) < product(b);
  });
  return out;
}

/// Pairwise coprime triples 1 < p < q < r with pqr <= bound.
inline std::vector<std::vector<u64>> coprime_triples(u64 bound) {
  std::vector<std::vector<u64>> out;
  for (u64 p = 2; p * (p + 1) * (p + 2) <= bound; ++p) {
    for (u64 q = p + 1; p * q * (q + 1) <= bound; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (u64 r = q + 1; p * q * r <= bound; ++r) {
        if (std::gcd(r, p * q) == 1) out.push_back({p, q, r});
      }
    }
  }
  return out;
}

inline std::string join(const std::vector<u64>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

inline bool congruent_pm(u64 a, u64 target, u64 m) { return pm(a, target, m); }

// Smallest positive w with r = +-w mod pq.
inline u64 least_w(u64 r, u64 pq) {
  const std::int64_t w = least_abs_residue(static_cast<std::int64_t>(r), static_cast<std::int64_t>(pq));
  return static_cast<u64>(w < 0 ? -w : w);
}

// The conclusions of the Broadhurst-III statement for a flat (pseudo) triple
// whose least w has p != 1 mod w. Returns the first failed conclusion.
inline std::optional<std::string> broadhurst_iii_failure(u64 p, u64 q, u64 w, bool pseudo) {
  if (!(w > p)) return "w <= p";
  if (!(q > p * p - p)) return "q <= p^2 - p";
  if (!congruent_pm(q, 1, p)) return "q != +-1 mod p";
  if (!congruent_pm(w, 1, p)) return "w != +-1 mod p";
  if (w % p == 1 % p) {
    const bool bad = pseudo ? (q % (w * p) == 1 % (w * p)) : congruent_pm(q, 1, w * p);
    if (bad) return pseudo ? "q = 1 mod wp" : "q = +-1 mod wp";
  }
  return std::nullopt;
}

}  // namespace detail

/// Runs the named conjecture or question scan over its candidate set below
/// the bound and reports every violation (or hit, for the questions).
inline ScanReport scan(const Conjecture& conj, const ScanOptions& opt) {
  using detail::congruent_pm;
  const auto start = std::chrono::steady_clock::now();
  const u64 bound = opt.bound ? opt.bound : default_bound(conj.kind);
  const u64 P = conj.prime;

  std::vector<std::vector<u64>> items;
  switch (conj.kind) {
    case ScanKind::NotFlat:
    case ScanKind::BroadhurstIII:
    case ScanKind::PlusMinusOneOnly:
      items = detail::odd_squarefree(1, bound, 3, 3);
      break;
    case ScanKind::PqrsAllFlat:
      items = detail::odd_squarefree(1, bound, 4, 4);
      break;
    case ScanKind::Pqrs2:
      items = detail::quaternary_chains(bound);
      break;
    case ScanKind::PqrstNotFlat:
      items = detail::odd_squarefree(1, bound, 5, 5);
      break;
    case ScanKind::HeightDrop:
    case ScanKind::NpMonotonic:
    case ScanKind::NpGtN:
      items = detail::odd_squarefree(1, bound, 3, 64, P);
      break;
    case ScanKind::PseudoNotFlat:
    case ScanKind::PseudoBroadhurstIII:
      items = detail::coprime_triples(bound);
      break;
  }

  std::unique_ptr<HeightJournal> journal;
  if (opt.journal) journal = std::make_unique<HeightJournal>(*opt.journal);
  std::atomic<u64> computed{0}, reused{0};

  auto height_n = [&](const std::vector<u64>& fs) -> Height {
    const u64 n = detail::product(fs);
    if (journal) {
      if (auto h = journal->lookup(n)) {
        ++reused;
        return *h;
      }
    }
    const IntPolynomial f = phi_uncached(n);
    Height h = poly_height(f);
    ++computed;
    if (journal) journal->record(n, fs, static_cast<u64>(f.degree()), h);
    return h;
  };
  auto height_pseudo = [&](const std::vector<u64>& parts) {
    ++computed;
    return pseudo_height(parts);
  };

  auto make_record = [](std::vector<std::vector<u64>> subjects, std::vector<Height> hs,
                        std::string verdict, std::string label) {
    ScanRecord r;
    r.n_or_tuple = std::move(label);
    r.subjects = std::move(subjects);
    r.heights = std::move(hs);
    r.verdict = std::move(verdict);
    return r;
  };

  auto evaluate = [&](const std::vector<u64>& fs) -> std::optional<ScanRecord> {
    const std::string tuple = detail::join(fs, ",");
    switch (conj.kind) {
      case ScanKind::NotFlat: {
        const u64 p = fs[0], q = fs[1], r = fs[2];
        if (congruent_pm(q, 1, p) || congruent_pm(r, 1, p * q)) return std::nullopt;
        const Height h = height_n(fs);
        if (h != 1) return std::nullopt;
        return make_record({fs}, {h}, "flat without q=±1 mod p or r=±1 mod pq", tuple);
      }
      case ScanKind::BroadhurstIII:
      case ScanKind::PseudoBroadhurstIII: {
        const bool pseudo = conj.kind == ScanKind::PseudoBroadhurstIII;
        const u64 p = fs[0], q = fs[1], r = fs[2];
        const u64 w = detail::least_w(r, p * q);
        if (w == 0 || p % w == 1 % w) return std::nullopt;
        const Height h = pseudo ? height_pseudo(fs) : height_n(fs);
        if (h != 1) return std::nullopt;
        auto failure = detail::broadhurst_iii_failure(p, q, w, pseudo);
        if (!failure) return std::nullopt;
        ScanRecord rec = make_record({fs}, {h}, "flat with w=" + std::to_string(w) + " but " + *failure, tuple);
        rec.pseudo = pseudo;
        return rec;
      }
      case ScanKind::PlusMinusOneOnly: {
        const u64 p = fs[0], q = fs[1], r = fs[2];
        if (q % p != p - 1 || congruent_pm(r, 1, p * q)) return std::nullopt;
        const Height h = height_n(fs);
        if (h != 1) return std::nullopt;
        return make_record({fs}, {h}, "evidence: flat with q=-1 mod p, r!=±1 mod pq", tuple);
      }
      case ScanKind::PqrsAllFlat: {
        const u64 p = fs[0], q = fs[1], r = fs[2], s = fs[3];
        if (q % p == p - 1 && congruent_pm(r, 1, p * q) && congruent_pm(s, 1, p * q * r)) {
          return std::nullopt;
        }
        const Height h = height_n(fs);
        if (h != 1) return std::nullopt;
        return make_record({fs}, {h}, "flat outside the congruence chain", tuple);
      }
      case ScanKind::Pqrs2: {
        if (fs[1] % fs[0] == fs[0] - 1) return std::nullopt;
        const Height h = height_n(fs);
        if (h == 2) return std::nullopt;
        return make_record({fs}, {h}, "chain with q!=-1 mod p but height != 2", tuple);
      }
      case ScanKind::PqrstNotFlat: {
        const Height h = height_n(fs);
        if (h != 1) return std::nullopt;
        return make_record({fs}, {h}, "flat quinary", tuple);
      }
      case ScanKind::HeightDrop:
      case ScanKind::NpMonotonic:
      case ScanKind::NpGtN: {
        std::vector<u64> fp = fs;
        fp.insert(std::upper_bound(fp.begin(), fp.end(), P), P);
        const u64 n = detail::product(fs);
        if (conj.kind == ScanKind::NpGtN) {
          const Height a = height_n(fs);
          if (a <= 1) return std::nullopt;
          const Height b = height_n(fp);
          if (b > 1) return std::nullopt;
          return make_record({fs, fp}, {a, b}, "A(n)>1 but A(nP)=1", std::to_string(n));
        }
        const Height a = height_n(fs);
        const Height b = height_n(fp);
        if (!(b < a)) return std::nullopt;
        return make_record({fs, fp}, {a, b}, "A(nP) < A(n)", std::to_string(n));
      }
      case ScanKind::PseudoNotFlat: {
        const u64 p = fs[0], q = fs[1], r = fs[2];
        if (congruent_pm(q, 1, p) || congruent_pm(r, 1, p * q)) return std::nullopt;
        const Height h = height_pseudo(fs);
        if (h != 1) return std::nullopt;
        ScanRecord rec = make_record({fs}, {h}, "flat without q=±1 mod p or r=±1 mod pq", tuple);
        rec.pseudo = true;
        return rec;
      }
    }
    return std::nullopt;
  };

  const unsigned workers = std::max(1u, opt.workers);
  const std::size_t chunk = std::max<std::size_t>(1, opt.chunk);
  const std::size_t nchunks = (items.size() + chunk - 1) / chunk;
  std::atomic<std::size_t> next{0};
  std::vector<std::vector<std::pair<std::size_t, ScanRecord>>> found(workers);
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&](unsigned w) {
    try {
      for (std::size_t c = next++; c < nchunks; c = next++) {
        const std::size_t end = std::min(items.size(), (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) {
          if (auto rec = evaluate(items[i])) found[w].emplace_back(i, std::move(*rec));
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = nchunks;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (journal) journal->close();
  if (error) std::rethrow_exception(error);

  std::vector<std::pair<std::size_t, ScanRecord>> all;
  for (auto& v : found) {
    for (auto& e : v) all.push_back(std::move(e));
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  ScanReport rep;
  rep.conjecture = conj.tag;
  rep.lo = 1;
  rep.hi = bound;
  rep.checked = items.size();
  rep.computed = computed;
  rep.reused = reused;
  for (std::size_t i = 0; i < all.size(); ++i) {
    all[i].second.id = std::to_string(i + 1);
    rep.counterexamples.push_back(std::move(all[i].second));
  }
  rep.complete = true;
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline ScanReport scan(const std::string& tag, u64 bound, unsigned workers) {
  ScanOptions opt;
  opt.bound = bound;
  opt.workers = workers;
  return scan(parse_conjecture(tag), opt);
}

/// Recomputes every height in the record; true when all match.
inline bool replay(const ScanRecord& r) {
  if (r.subjects.size() != r.heights.size()) return false;
  for (std::size_t i = 0; i < r.subjects.size(); ++i) {
    const Height h = r.pseudo ? pseudo_height(r.subjects[i])
                              : poly_height(phi_uncached(detail::product(r.subjects[i])));
    if (h != r.heights[i]) return false;
  }
  return true;
}

inline std::string report_csv(const ScanReport& rep) {
  std::string out = "id,n_or_tuple,height_values,verdict\n";
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  for (const auto& r : rep.counterexamples) {
    std::string hs;
    for (std::size_t i = 0; i < r.heights.size(); ++i) {
      if (i) hs += ';';
      hs += r.heights[i].str();
    }
    out += quote(r.id) + "," + quote(r.n_or_tuple) + "," + quote(hs) + "," + quote(r.verdict) + "\n";
  }
  return out;
}

inline Json report_json(const ScanReport& rep, bool include_timing = false) {
  Json recs = Json::array();
  for (const auto& r : rep.counterexamples) {
    Json hs = Json::array();
    for (const auto& h : r.heights) hs.push_back(big_to_json(h));
    recs.push_back({{"id", r.id},
                    {"n_or_tuple", r.n_or_tuple},
                    {"pseudo", r.pseudo},
                    {"subjects", r.subjects},
                    {"height_values", hs},
                    {"verdict", r.verdict}});
  }
  Json j{{"conjecture", rep.conjecture},
         {"range", {rep.lo, rep.hi}},
         {"checked", rep.checked},
         {"complete", rep.complete},
         {"counterexamples", recs}};
  if (include_timing) j["elapsed_seconds"] = rep.elapsed_seconds;
  return j;
}

inline ScanReport report_from_json(const Json& j) {
  try {
    ScanReport rep;
    rep.conjecture = j.at("conjecture").get<std::string>();
    rep.lo = j.at("range").at(0).get<u64>();
    rep.hi = j.at("range").at(1).get<u64>();
    rep.checked = j.at("checked").get<u64>();
    rep.complete = j.at("complete").get<bool>();
    for (const auto& e : j.at("counterexamples")) {
      ScanRecord r;
      r.id = e.at("id").get<std::string>();
      r.n_or_tuple = e.at("n_or_tuple").get<std::string>();
      r.pseudo = e.at("pseudo").get<bool>();
      r.subjects = e.at("subjects").get<std::vector<std::vector<u64>>>();
      for (const auto& h : e.at("height_values")) r.heights.push_back(big_from_json(h));
      r.verdict = e.at("verdict").get<std::string>();
      rep.counterexamples.push_back(std::move(r));
    }
    return rep;
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed scan report: ") + e.what());
  }
}

}  // namespace cycloforge
