#pragma once

// Command-line frontend. run_cli() is the whole program minus main(), so the
// test suite can drive it in-process.
//
// Exit status: 0 success, 1 usage error, 2 mathematically valid "no" answer
// (algorithm failure, no collision, census discrepancy).

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eqc/eqc.hpp"

namespace eqc::cli {

using json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNo = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Runs fn, turning library errors into usage errors that name the flag.
template <typename Fn>
auto for_flag(const std::string& flag, Fn&& fn) -> decltype(fn())
{
  try {
    return fn();
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

inline const std::string& required(const std::string& flag, const std::string& value)
{
  if (value.empty())
    throw UsageError(flag + " is required");
  return value;
}

inline json decomposition_json(const Decomposition& d)
{
  return {{"g", to_string(d.g.poly())}, {"h", to_string(d.h.poly())}};
}

inline json simply_json(const SimplyIdentification& s)
{
  return {{"k", s.k}, {"u", s.u.code()}, {"s", s.s.code()}, {"eps", s.eps}, {"m", s.m}, {"w", s.w.code()}};
}

inline json multiply_json(const MultiplyIdentification& m)
{
  return {{"a", m.a.code()}, {"b", m.b.code()}, {"m", m.m}, {"w", m.w.code()}};
}

inline json class_json(const CollisionClass& c)
{
  json j;
  j["class"] = std::string(tag_name(c.tag));
  if (c.simply)
    j["params"] = simply_json(*c.simply);
  else if (c.multiply)
    j["params"] = multiply_json(*c.multiply);
  else
    j["params"] = nullptr;
  return j;
}

inline void print_collision(std::ostream& out, const Collision& c)
{
  out << to_string(c.f().poly()) << '\n';
  for (const auto& d : c.decompositions())
    out << to_string(d.g.poly()) << " o " << to_string(d.h.poly()) << '\n';
}

inline json collision_json(const Collision& c)
{
  json j;
  j["f"] = to_string(c.f().poly());
  json ds = json::array();
  for (const auto& d : c.decompositions())
    ds.push_back(decomposition_json(d));
  j["decompositions"] = ds;
  return j;
}

} // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Equal-degree polynomial decomposition collisions over finite fields", "eqc"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  unsigned threads = 0;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--threads", threads, "census worker threads (0: all cores)");

  std::string field_text, poly_text, u_text, s_text, w_text, a_text, b_text, out_path, kind;
  std::uint64_t r = 0, m = 0, p = 0, q = 0;
  unsigned eps = 0;

  auto add_field_poly = [&](CLI::App* sub, bool poly_required) {
    sub->add_option("--field", field_text, "p^d or p^d:c0,...,cd")->required();
    auto* o = sub->add_option("--poly", poly_text, "polynomial, e.g. x^9+x^5+x");
    if (poly_required)
      o->required();
  };
  auto add_pq = [&](CLI::App* sub) {
    sub->add_option("--p", p, "characteristic")->required();
    sub->add_option("--q", q, "field size")->required();
  };

  auto* construct = app.add_subcommand("construct", "build a collision from parameters");
  construct->add_option("kind", kind, "S, M or frobenius")->required()->check(CLI::IsMember({"S", "M", "frobenius"}));
  add_field_poly(construct, false);
  construct->add_option("--r", r, "power of p (default p)");
  construct->add_option("--u", u_text, "S parameter u");
  construct->add_option("--s", s_text, "S parameter s");
  construct->add_option("--eps", eps, "S parameter eps (0 or 1)");
  construct->add_option("--m", m, "S or M parameter m");
  construct->add_option("--a", a_text, "M parameter a");
  construct->add_option("--b", b_text, "M parameter b");
  construct->add_option("--w", w_text, "original shift (default 0)");

  auto* identify = app.add_subcommand("identify", "recover S and M parameters of a degree r^2 polynomial");
  add_field_poly(identify, true);
  identify->add_option("--r", r, "power of p (default p)");

  auto* classify_cmd = app.add_subcommand("classify", "collision class of a degree p^2 polynomial");
  add_field_poly(classify_cmd, true);

  auto* decompose = app.add_subcommand("decompose", "all decompositions of a degree p^2 polynomial");
  add_field_poly(decompose, true);

  auto* count = app.add_subcommand("count", "predicted collision spectrum and decomposable count");
  add_pq(count);
  auto* nu_cmd = app.add_subcommand("nu", "#D / q^(2p-2) as an exact fraction");
  add_pq(nu_cmd);
  auto* census = app.add_subcommand("census", "exhaustive census against the closed forms");
  add_pq(census);
  census->add_option("--out", out_path, "write the JSON report here");
  auto* verify_cmd = app.add_subcommand("verify", "run a census and report whether it agrees with the closed forms");
  add_pq(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    auto field = [&] { return detail::for_flag("--field", [&] { return parse_field(field_text); }); };
    auto elem = [&](const FieldPtr& F, const std::string& flag, const std::string& text) {
      return detail::for_flag(flag, [&] { return parse_elem(*F, detail::required(flag, text)); });
    };
    auto monic_poly = [&](const FieldPtr& F) {
      return detail::for_flag("--poly", [&] { return MonicOriginal(parse_poly(F, poly_text)); });
    };
    auto r_or_p = [&](const FieldPtr& F) {
      const std::uint64_t rr = r == 0 ? F->characteristic() : r;
      if (!log_base(rr, F->characteristic()))
        throw UsageError("--r: " + std::to_string(rr) + " is not a power of " + std::to_string(F->characteristic()));
      return rr;
    };

    if (*construct) {
      const FieldPtr F = field();
      const std::uint64_t rr = r_or_p(F);
      const FieldElem w = w_text.empty() ? F->zero() : elem(F, "--w", w_text);
      std::optional<Collision> c;
      if (kind == "S") {
        const SimplyParams sp{F, elem(F, "--u", u_text), elem(F, "--s", s_text), eps, m, rr};
        detail::for_flag("--u/--s/--eps/--m", [&] { validate(sp); });
        c = shift_collision(decompositions_S(sp), w);
      } else if (kind == "M") {
        const MultiplyParams mp{F, elem(F, "--a", a_text), elem(F, "--b", b_text), m, rr};
        detail::for_flag("--a/--b/--m", [&] { validate(mp); });
        c = shift_collision(build_M(mp).collision, w);
      } else {
        detail::required("--poly", poly_text);
        const MonicOriginal h = monic_poly(F);
        c = shift_collision(detail::for_flag("--poly", [&] { return frobenius_collision(h, rr); }), w);
      }
      if (as_json)
        out << detail::collision_json(*c).dump() << '\n';
      else
        detail::print_collision(out, *c);
      return kExitOk;
    }

    if (*identify) {
      const FieldPtr F = field();
      const MonicOriginal f = monic_poly(F);
      const std::uint64_t rr = r_or_p(F);
      const auto s = detail::for_flag("--poly", [&] { return identify_simply(f, rr); });
      const auto mi = identify_multiply(f, rr);
      if (as_json) {
        json j;
        j["simply"] = s ? detail::simply_json(*s) : json(nullptr);
        j["multiply"] = mi ? detail::multiply_json(*mi) : json(nullptr);
        out << j.dump() << '\n';
      } else {
        if (s)
          out << to_string(CollisionClass{CollisionTag::S, s, std::nullopt}) << '\n';
        if (mi)
          out << to_string(CollisionClass{CollisionTag::M, std::nullopt, mi}) << '\n';
        if (!s && !mi)
          out << "failure\n";
      }
      return (s || mi) ? kExitOk : kExitNo;
    }

    if (*classify_cmd) {
      const FieldPtr F = field();
      const MonicOriginal f = monic_poly(F);
      const CollisionClass c = detail::for_flag("--poly", [&] { return classify(f); });
      if (as_json)
        out << detail::class_json(c).dump() << '\n';
      else
        out << to_string(c) << '\n';
      return c.tag == CollisionTag::None ? kExitNo : kExitOk;
    }

    if (*decompose) {
      const FieldPtr F = field();
      const MonicOriginal f = monic_poly(F);
      const DecompositionListing l = detail::for_flag("--poly", [&] { return enumerate_decompositions(f); });
      if (as_json) {
        json j = detail::collision_json(l.collision);
        j["class"] = std::string(tag_name(l.cls.tag));
        j["complete"] = !l.fallback_skipped;
        out << j.dump() << '\n';
      } else {
        out << to_string(l.cls) << '\n';
        for (const auto& d : l.collision.decompositions())
          out << to_string(d.g.poly()) << " o " << to_string(d.h.poly()) << '\n';
        if (l.fallback_skipped)
          out << "brute-force search skipped: field too large\n";
      }
      return (l.fallback_skipped || l.collision.size() == 0) ? kExitNo : kExitOk;
    }

    if (*count) {
      const Spectrum s = detail::for_flag("--p/--q", [&] { return spectrum(Int(p), Int(q)); });
      if (as_json) {
        out << to_json(s).dump() << '\n';
      } else {
        for (const auto& [k, v] : s.c)
          out << 'c' << k << '=' << v << '\n';
        out << "D=" << s.d_total << '\n';
      }
      return kExitOk;
    }

    if (*nu_cmd) {
      const Rational v = detail::for_flag("--p/--q", [&] { return nu(Int(p), Int(q)); });
      if (as_json)
        out << json{{"p", p}, {"q", q}, {"nu", to_string(v)}}.dump() << '\n';
      else
        out << to_string(v) << '\n';
      return kExitOk;
    }

    if (*census || *verify_cmd) {
      if (p > 0xFFFFFFFFULL)
        throw UsageError("--p: too large");
      const CensusReport rep = detail::for_flag("--p/--q", [&] {
        return run_census(static_cast<std::uint32_t>(p), q, CensusOptions{threads, false});
      });
      const bool ok = verify(rep);
      const bool partition = class_partition_check(rep);
      if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file)
          throw UsageError("--out: cannot open " + out_path);
        file << to_json(rep).dump(2) << '\n';
      }
      if (as_json) {
        if (*census)
          out << to_json(rep).dump() << '\n';
        else
          out << json{{"p", p}, {"q", q}, {"verify", ok}, {"class_partition", partition}}.dump() << '\n';
      } else {
        if (*census) {
          for (const auto& [k, v] : rep.spectrum_observed)
            out << 'c' << k << '=' << v << '\n';
          out << "D=" << rep.decomposable_observed << '\n';
          out << "F=" << rep.class_counts.at("F") << " S=" << rep.class_counts.at("S")
              << " M=" << rep.class_counts.at("M") << '\n';
          out << "mismatches=" << rep.mismatches.size() << '\n';
        }
        out << "verify: " << (ok ? "PASS" : "FAIL") << '\n';
        out << "class partition: " << (partition ? "PASS" : "FAIL") << '\n';
      }
      return (ok && partition) ? kExitOk : kExitNo;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace eqc::cli
