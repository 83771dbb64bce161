#pragma once

// Seeded randomized campaigns for the lemma checkers. Trial i of a campaign
// draws from Rng(seed, i) only, so any trial can be replayed in isolation and
// results do not depend on how trials are sharded across workers.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "apxhom/lemma_lab.hpp"
#include "apxhom/parallel.hpp"
#include "apxhom/random.hpp"
#include "apxhom/search.hpp"

namespace apxhom::lab {

enum class Checker { claim_a, bukh, bsg, petridis, ruzsa, kernel };

inline const char* checker_name(Checker c) {
  switch (c) {
    case Checker::claim_a: return "claim-a";
    case Checker::bukh: return "bukh";
    case Checker::bsg: return "bsg";
    case Checker::petridis: return "petridis";
    case Checker::ruzsa: return "ruzsa";
    case Checker::kernel: return "kernel";
  }
  return "?";
}

inline Checker parse_checker(const std::string& s) {
  for (auto c : {Checker::claim_a, Checker::bukh, Checker::bsg, Checker::petridis, Checker::ruzsa, Checker::kernel})
    if (s == checker_name(c)) return c;
  throw std::invalid_argument("unknown checker '" + s + "' (expected claim-a, bukh, bsg, petridis, ruzsa, kernel)");
}

struct TrialOutcome {
  std::uint64_t trial = 0;
  std::vector<std::pair<std::string, ElementSet>> inputs;
  std::vector<std::pair<std::string, std::int64_t>> params;
  std::vector<CheckReport> reports;
  /// Set when a checker threw (precondition or internal-consistency failure).
  std::string error;

  bool ok() const {
    if (!error.empty()) return false;
    for (const auto& r : reports)
      if (!r.ok()) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Instance generators.

struct ClaimAInstance {
  GroupSpec g, h;
  ElementSet gamma, x, b;
  std::int64_t r = 2;
};

/// Random injection G -> H with |G| <= 64 and |H| <= 128, X and B random subsets
/// of its graph (at most 32 points each), r in {2, ..., 5}.
inline ClaimAInstance make_claim_a_instance(Rng& rng) {
  ClaimAInstance in;
  in.g = random_finite_spec(rng, 64, 2);
  in.h = random_finite_spec(rng, 128, in.g.order());
  auto f = search::random_injection(in.g, in.h, rng);
  in.gamma = graph_of(f);
  auto cap = std::min<std::size_t>(in.gamma.size(), 32);
  in.x = random_subset(rng, in.gamma, static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(cap))));
  in.b = random_subset(rng, in.gamma, static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(cap))));
  in.r = rng.between(2, 5);
  return in;
}

struct BukhInstance {
  ElementSet a, x;
  std::int64_t r = 2;
};

/// Y = A. Group order <= 256, |A|, |X| <= 12, r in {2, ..., 9}.
inline BukhInstance make_bukh_instance(Rng& rng) {
  auto spec = random_finite_spec(rng, 256, 2);
  auto n = static_cast<std::int64_t>(spec.order());
  BukhInstance in;
  in.a = random_subset(rng, spec, static_cast<std::size_t>(rng.between(1, std::min<std::int64_t>(12, n))));
  in.x = random_subset(rng, spec, static_cast<std::size_t>(rng.between(1, std::min<std::int64_t>(12, n))));
  in.r = rng.between(2, 9);
  return in;
}

struct PetridisInstance {
  ElementSet a, y;
  std::vector<ElementSet> cs;
};

/// Y in A with |Y| <= 12, and `c_count` random sets C.
inline PetridisInstance make_petridis_instance(Rng& rng, std::size_t c_count = 100) {
  auto spec = random_finite_spec(rng, 200, 4);
  auto n = static_cast<std::int64_t>(spec.order());
  PetridisInstance in;
  in.a = random_subset(rng, spec, static_cast<std::size_t>(rng.between(1, std::min<std::int64_t>(16, n))));
  in.y = random_subset(rng, in.a,
                       static_cast<std::size_t>(rng.between(1, std::min<std::int64_t>(12, static_cast<std::int64_t>(in.a.size())))));
  for (std::size_t i = 0; i < c_count; ++i)
    in.cs.push_back(random_subset(rng, spec, static_cast<std::size_t>(rng.between(1, std::min<std::int64_t>(12, n)))));
  return in;
}

struct RuzsaInstance {
  ElementSet u, v, w;
};

/// Random 8-element sets in Z/64 x Z/4.
inline RuzsaInstance make_ruzsa_instance(Rng& rng) {
  GroupSpec spec{64, 4};
  return {random_subset(rng, spec, 8), random_subset(rng, spec, 8), random_subset(rng, spec, 8)};
}

struct KernelInstance {
  ElementSet z, a;
  int k = 1;
};

inline KernelInstance make_kernel_instance(Rng& rng) {
  auto spec = random_finite_spec(rng, 256, 2);
  auto n = static_cast<std::int64_t>(spec.order());
  KernelInstance in;
  in.a = random_subset(rng, spec, static_cast<std::size_t>(rng.between(1, std::min<std::int64_t>(10, n))));
  in.z = random_subset(rng, in.a, static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(in.a.size()))));
  in.k = static_cast<int>(rng.between(1, 4));
  return in;
}

/// Corpus member `index`: cycles through random sets, subgroups, unions of
/// cosets, and graphs of the binary embedding and the centred unwrapping.
/// Every set has at most 64 elements and at least one additive triple.
inline ElementSet make_bsg_set(Rng& rng, std::uint64_t index) {
  switch (index % 5) {
    case 0: {
      for (;;) {
        auto spec = random_finite_spec(rng, 128, 4);
        auto n = static_cast<std::int64_t>(spec.order());
        auto s = random_subset(rng, spec, static_cast<std::size_t>(rng.between(2, std::min<std::int64_t>(64, n))));
        if (triple_correlation(s) > 0) return s;
      }
    }
    case 1: {
      auto spec = random_finite_spec(rng, 64, 2);
      auto r = rng.between(1, 6);
      return rng.coin() ? kernel_subgroup(spec, r) : dilate_image(spec, r);
    }
    case 2: {
      for (;;) {
        auto spec = random_finite_spec(rng, 128, 4);
        auto sub = dilate_image(spec, rng.between(2, 4));
        if (sub.size() > 32) continue;
        auto cosets = rng.between(1, 4);
        auto acc = sub;
        for (std::int64_t i = 0; i < cosets; ++i)
          acc = unite(acc, translate(sub, unrank(spec, rng.below(spec.order()))));
        if (acc.size() <= 64 && triple_correlation(acc) > 0) return acc;
      }
    }
    case 3: {
      auto n = static_cast<int>(rng.between(1, 6));
      return graph_of(binary_embedding(n, next_prime_above(std::int64_t{1} << n)));
    }
    default: {
      static const std::int64_t odd_primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};
      auto p = odd_primes[rng.below(std::size(odd_primes))];
      return graph_of(centered_unwrap(p, next_prime_above(p)));
    }
  }
}

// ---------------------------------------------------------------------------

inline TrialOutcome run_trial(Checker checker, std::uint64_t seed, std::uint64_t trial) {
  Rng rng(seed, trial);
  TrialOutcome out;
  out.trial = trial;
  try {
    switch (checker) {
      case Checker::claim_a: {
        auto in = make_claim_a_instance(rng);
        out.inputs = {{"Gamma", in.gamma}, {"X", in.x}, {"B", in.b}};
        out.params = {{"r", in.r}, {"G_factors", static_cast<std::int64_t>(in.g.factor_count())}};
        out.reports.push_back(claim_a_check(in.g, in.h, in.gamma, in.x, in.b, in.r));
        break;
      }
      case Checker::bukh: {
        auto in = make_bukh_instance(rng);
        out.inputs = {{"A", in.a}, {"X", in.x}, {"Y", in.a}};
        out.params = {{"r", in.r}};
        out.reports.push_back(bukh_check(in.a, in.x, in.a, in.r));
        break;
      }
      case Checker::bsg: {
        auto s = make_bsg_set(rng, trial);
        out.inputs = {{"S", s}};
        out.reports.push_back(bsg_symmetric(s).output.checks);
        break;
      }
      case Checker::petridis: {
        auto in = make_petridis_instance(rng);
        out.inputs = {{"A", in.a}, {"Y", in.y}};
        for (std::size_t i = 0; i < in.cs.size(); ++i) out.inputs.emplace_back("C" + std::to_string(i), in.cs[i]);
        auto min = petridis_minimizer(in.y, in.a);
        for (const auto& c : in.cs) out.reports.push_back(petridis_check(min, in.a, c));
        break;
      }
      case Checker::ruzsa: {
        auto in = make_ruzsa_instance(rng);
        out.inputs = {{"U", in.u}, {"V", in.v}, {"W", in.w}};
        out.reports.push_back(ruzsa_triangle_check(in.u, in.v, in.w));
        break;
      }
      case Checker::kernel: {
        auto in = make_kernel_instance(rng);
        out.inputs = {{"Z", in.z}, {"A", in.a}};
        out.params = {{"k", in.k}};
        out.reports.push_back(kernel_quotient_identity_check(in.z, in.a, in.k));
        break;
      }
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

/// Runs trials [0, trials) sharded across workers; outcomes are in trial order.
inline std::vector<TrialOutcome> run_campaign(Checker checker, std::uint64_t trials, std::uint64_t seed) {
  std::vector<TrialOutcome> out(trials);
  parallel_for_shards(
      trials,
      [&](std::size_t begin, std::size_t end, std::size_t) {
        for (auto i = begin; i < end; ++i) out[i] = run_trial(checker, seed, i);
      },
      16);
  return out;
}

}  // namespace apxhom::lab
