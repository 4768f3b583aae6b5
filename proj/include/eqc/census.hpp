#pragma once

// Exhaustive census of degree-p^2 compositions over F_q: enumerate every
// pair (g, h) of degree-p monic original polynomials, group the compositions,
// classify every composed polynomial and compare with the closed forms.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <span>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "eqc/counting.hpp"
#include "eqc/identify.hpp"

namespace eqc {

struct Discrepancy {
  std::string kind; // spectrum, decomposable, trichotomy, maximality, frobenius-derivative
  std::string f;
  std::string observed;
  std::string predicted;
};

/// One composed polynomial with all pairs (g index, h index) producing it.
/// Indices refer to monic_original_at(field, p, index).
struct CensusEntry {
  std::vector<code_t> f; // coefficients of x^0 .. x^(p^2)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  CollisionTag tag = CollisionTag::None;
};

struct CensusReport {
  std::uint32_t p = 0;
  std::uint64_t q = 0;
  std::map<unsigned, std::uint64_t> spectrum_observed;
  Spectrum spectrum_predicted;
  std::map<std::string, std::uint64_t> class_counts{{"F", 0}, {"S", 0}, {"M", 0}};
  std::map<std::string, std::map<unsigned, std::uint64_t>> class_counts_by_k;
  std::uint64_t decomposable_observed = 0;
  std::uint64_t pairs_total = 0;
  std::vector<Discrepancy> mismatches;
  std::vector<CensusEntry> entries; // filled only with CensusOptions::keep_entries
};

struct CensusOptions {
  unsigned threads = 0; // 0: hardware concurrency
  bool keep_entries = false;
};

/// Largest number of (g, h) pairs the census will enumerate.
inline constexpr std::uint64_t kCensusMaxPairs = std::uint64_t{1} << 24;

namespace detail {

inline unsigned worker_count(unsigned requested)
{
  if (requested != 0)
    return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

template <typename Fn>
void run_workers(unsigned n, Fn&& fn)
{
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n);
  for (unsigned w = 0; w < n; ++w)
    pool.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool)
    t.join();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

// Canonical key: the codes of the coefficients of x^1 .. x^(n-1), one byte
// each when q <= 256, two bytes otherwise.
inline void append_key(std::string& key, std::span<const code_t> c, bool wide)
{
  key.clear();
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    if (wide)
      key.push_back(static_cast<char>(c[i] >> 8U));
    key.push_back(static_cast<char>(c[i] & 0xFFU));
  }
}

inline std::string int_string(const Int& v) { return v.str(); }

} // namespace detail

inline CensusReport run_census(std::uint32_t p, std::uint64_t q, const CensusOptions& opt = {})
{
  const unsigned d = power_exponent(Int(q), Int(p));
  const FieldPtr F = Field::create(p, d);
  const std::uint64_t count_h = monic_original_count(*F, p);
  if (count_h * count_h > kCensusMaxPairs)
    throw Error(Errc::TooLarge, "census over (" + std::to_string(p) + ", " + std::to_string(q)
                                    + ") exceeds 2^24 pairs");
  const std::size_t n = std::size_t{p} * p;
  const bool wide = q > 256;

  // Powers h^1 .. h^p of every right component, as dense coefficient rows.
  std::vector<MonicOriginal> comps = monic_originals(F, p);
  std::vector<std::vector<std::vector<code_t>>> powers(count_h);
  for (std::uint64_t i = 0; i < count_h; ++i) {
    Poly acc = Poly::constant(F, 1);
    powers[i].resize(p + 1);
    for (std::uint32_t e = 1; e <= p; ++e) {
      acc = acc * comps[i].poly();
      auto row = acc.coeffs();
      row.resize(n + 1, 0);
      powers[i][e] = std::move(row);
    }
  }

  using Table = std::unordered_map<std::string, std::vector<std::pair<std::uint32_t, std::uint32_t>>>;
  const unsigned workers = detail::worker_count(opt.threads);
  std::vector<Table> partial(workers);
  detail::run_workers(workers, [&](unsigned w) {
    Table& table = partial[w];
    std::vector<code_t> f(n + 1);
    std::string key;
    for (std::uint64_t hi = w; hi < count_h; hi += workers) {
      const auto& hp = powers[hi];
      for (std::uint64_t gi = 0; gi < count_h; ++gi) {
        const Poly& g = comps[gi].poly();
        std::fill(f.begin(), f.end(), 0);
        for (std::uint32_t e = 1; e <= p; ++e) {
          const code_t ge = g.coeff(e);
          if (ge == 0)
            continue;
          const auto& row = hp[e];
          for (std::size_t i = 0; i <= n; ++i)
            f[i] = F->add(f[i], F->mul(ge, row[i]));
        }
        detail::append_key(key, f, wide);
        table[key].emplace_back(static_cast<std::uint32_t>(gi), static_cast<std::uint32_t>(hi));
      }
    }
  });
  Table merged = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) {
    for (auto& [k, v] : partial[w]) {
      auto& dst = merged[k];
      dst.insert(dst.end(), v.begin(), v.end());
    }
    Table{}.swap(partial[w]);
  }

  std::vector<CensusEntry> entries;
  entries.reserve(merged.size());
  for (auto& [key, pairs] : merged) {
    CensusEntry e;
    e.f.assign(n + 1, 0);
    e.f[n] = 1;
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t pos = (i - 1) * (wide ? 2 : 1);
      code_t c = static_cast<unsigned char>(key[pos]);
      if (wide)
        c = (c << 8U) | static_cast<unsigned char>(key[pos + 1]);
      e.f[i] = c;
    }
    std::sort(pairs.begin(), pairs.end());
    e.pairs = std::move(pairs);
    entries.push_back(std::move(e));
  }
  Table{}.swap(merged);
  std::sort(entries.begin(), entries.end(), [](const CensusEntry& a, const CensusEntry& b) { return a.f < b.f; });

  CensusReport report;
  report.p = p;
  report.q = q;
  report.pairs_total = count_h * count_h;

  std::mutex mu;
  detail::run_workers(workers, [&](unsigned w) {
    std::map<unsigned, std::uint64_t> observed_k;
    std::map<std::string, std::map<unsigned, std::uint64_t>> by_k;
    std::vector<Discrepancy> bad;
    for (std::size_t idx = w; idx < entries.size(); idx += workers) {
      CensusEntry& e = entries[idx];
      const MonicOriginal f(Poly(F, e.f));
      const auto k = static_cast<unsigned>(e.pairs.size());
      ++observed_k[k];
      const CollisionClass cls = classify(f);
      e.tag = cls.tag;
      const bool colliding = k >= 2;
      if (colliding != (cls.tag != CollisionTag::None)) {
        bad.push_back({"trichotomy", to_string(f.poly()), "k=" + std::to_string(k), to_string(cls)});
        continue;
      }
      if (!colliding)
        continue;
      ++by_k[std::string(tag_name(cls.tag))][k];
      if ((cls.tag == CollisionTag::F) != derivative(f.poly()).is_zero())
        bad.push_back({"frobenius-derivative", to_string(f.poly()), std::string(tag_name(cls.tag)), "F iff f' = 0"});

      // Maximality: the classified construction lists exactly the observed pairs.
      std::size_t expected = 2;
      if (cls.tag == CollisionTag::S)
        expected = cls.simply->k;
      const DecompositionListing listing = enumerate_decompositions(f);
      Collision observed(f);
      for (const auto& [gi, hi] : e.pairs)
        observed.insert(Decomposition(comps[gi], comps[hi]));
      if (expected != k || !(listing.collision == observed))
        bad.push_back({"maximality", to_string(f.poly()), "k=" + std::to_string(k),
                       std::string(tag_name(cls.tag)) + " lists " + std::to_string(listing.collision.size())});
    }
    std::lock_guard lock(mu);
    for (const auto& [k, v] : observed_k)
      report.spectrum_observed[k] += v;
    for (const auto& [tag, m] : by_k)
      for (const auto& [k, v] : m) {
        report.class_counts_by_k[tag][k] += v;
        report.class_counts[tag] += v;
      }
    report.mismatches.insert(report.mismatches.end(), bad.begin(), bad.end());
  });
  std::sort(report.mismatches.begin(), report.mismatches.end(),
            [](const Discrepancy& a, const Discrepancy& b) { return std::tie(a.kind, a.f) < std::tie(b.kind, b.f); });

  report.decomposable_observed = entries.size();
  report.spectrum_predicted = spectrum(Int(p), Int(q));
  std::map<unsigned, bool> keys;
  for (const auto& [k, v] : report.spectrum_observed)
    keys[k] = true;
  for (const auto& [k, v] : report.spectrum_predicted.c)
    keys[k] = true;
  for (const auto& [k, unused] : keys) {
    auto it = report.spectrum_observed.find(k);
    const Int obs = it == report.spectrum_observed.end() ? Int(0) : Int(it->second);
    const Int pred = report.spectrum_predicted.at(k);
    if (obs != pred)
      report.mismatches.push_back({"spectrum", "c_" + std::to_string(k), obs.str(), pred.str()});
  }
  if (Int(report.decomposable_observed) != report.spectrum_predicted.d_total)
    report.mismatches.push_back({"decomposable", "D", std::to_string(report.decomposable_observed),
                                 report.spectrum_predicted.d_total.str()});
  if (opt.keep_entries)
    report.entries = std::move(entries);
  return report;
}

/// True iff the report has no discrepancies and its own invariants hold:
/// sum k c_k = q^(2p-2), #D = sum c_k, and observed = predicted spectrum.
inline bool verify(const CensusReport& r)
{
  if (!r.mismatches.empty())
    return false;
  Int weighted = 0;
  Int total = 0;
  for (const auto& [k, v] : r.spectrum_observed) {
    weighted += Int(k) * v;
    if (k >= 1)
      total += v;
  }
  if (weighted != detail::ipow(Int(r.q), 2 * r.p - 2) || total != r.decomposable_observed)
    return false;
  for (const auto& [k, v] : r.spectrum_observed)
    if (Int(v) != r.spectrum_predicted.at(k))
      return false;
  for (const auto& [k, v] : r.spectrum_predicted.c) {
    auto it = r.spectrum_observed.find(k);
    if ((it == r.spectrum_observed.end() ? Int(0) : Int(it->second)) != v)
      return false;
  }
  return Int(r.decomposable_observed) == r.spectrum_predicted.d_total;
}

/// Observed class counts against the per-class closed forms: Frobenius
/// q^(p-1) - 1 at k = 2, the S counts at k = 2 and k = p + 1, and the M count
/// (zero for p = 2) at k = 2.
inline bool class_partition_check(const CensusReport& r)
{
  const ClassBreakdown b = class_breakdown(Int(r.p), Int(r.q));
  auto observed = [&](const std::string& tag, unsigned k) -> Int {
    auto it = r.class_counts_by_k.find(tag);
    if (it == r.class_counts_by_k.end())
      return 0;
    auto jt = it->second.find(k);
    return jt == it->second.end() ? Int(0) : Int(jt->second);
  };
  std::map<std::string, std::map<unsigned, Int>> expected;
  expected["F"][2] = b.frobenius;
  expected["S"][2] = b.simply_2;
  expected["S"][r.p + 1] = b.simply_p1;
  expected["M"][2] = b.multiply;
  for (const auto& [tag, m] : expected)
    for (const auto& [k, v] : m)
      if (observed(tag, k) != v)
        return false;
  // No class may show up at any other k.
  for (const auto& [tag, m] : r.class_counts_by_k)
    for (const auto& [k, v] : m)
      if (v != 0 && (expected[tag].count(k) == 0))
        return false;
  return true;
}

namespace detail {

inline nlohmann::ordered_json int_json(const Int& v)
{
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

} // namespace detail

inline nlohmann::ordered_json to_json(const Spectrum& s)
{
  nlohmann::ordered_json j;
  j["p"] = detail::int_json(s.p);
  j["q"] = detail::int_json(s.q);
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.c)
    c[std::to_string(k)] = detail::int_json(v);
  j["c"] = c;
  j["d_total"] = detail::int_json(s.d_total);
  return j;
}

inline nlohmann::ordered_json to_json(const CensusReport& r)
{
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["q"] = r.q;
  nlohmann::ordered_json obs = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.spectrum_observed)
    obs[std::to_string(k)] = v;
  j["spectrum_observed"] = obs;
  j["spectrum_predicted"] = to_json(r.spectrum_predicted);
  nlohmann::ordered_json cc = nlohmann::ordered_json::object();
  for (const char* tag : {"F", "S", "M"}) {
    auto it = r.class_counts.find(tag);
    cc[tag] = it == r.class_counts.end() ? 0 : it->second;
  }
  j["class_counts"] = cc;
  nlohmann::ordered_json bk = nlohmann::ordered_json::object();
  for (const char* tag : {"F", "S", "M"}) {
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    if (auto it = r.class_counts_by_k.find(tag); it != r.class_counts_by_k.end())
      for (const auto& [k, v] : it->second)
        m[std::to_string(k)] = v;
    bk[tag] = m;
  }
  j["class_counts_by_k"] = bk;
  j["decomposable_observed"] = r.decomposable_observed;
  nlohmann::ordered_json mm = nlohmann::ordered_json::array();
  for (const auto& d : r.mismatches)
    mm.push_back({{"kind", d.kind}, {"f", d.f}, {"observed", d.observed}, {"predicted", d.predicted}});
  j["mismatches"] = mm;
  return j;
}

} // namespace eqc
