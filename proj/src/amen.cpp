#include "sl2lab/amen.hpp"

#include <algorithm>
#include <json.hpp>

#include "sl2lab/kernels.hpp"

namespace sl2lab {

using nlohmann::json;

const char* folner_mode_name(FolnerMode m) {
  return m == FolnerMode::Translation ? "translation" : "conjugation";
}

const char* search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Exact: return "exact";
    case SearchStatus::Heuristic: return "heuristic";
    case SearchStatus::Exhausted: return "exhausted";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Defects and certificates

Rational folner_defect(const Group& g, const std::vector<std::uint64_t>& s,
                       const std::vector<std::uint64_t>& t, FolnerMode mode) {
  if (t.empty()) throw Error(Errc::EmptyT, "Folner defect of the empty set");
  std::uint64_t n = g.order();
  std::uint64_t words = (n + 63) / 64;
  std::vector<std::uint64_t> t_bits(words, 0), img(words, 0);
  for (std::uint64_t x : t) {
    if (x >= n) throw Error(Errc::BadInput, "element index out of range");
    t_bits[x / 64] |= 1ull << (x % 64);
  }
  std::uint64_t worst = 0;
  for (std::uint64_t gi : s) {
    std::fill(img.begin(), img.end(), 0);
    std::uint64_t ginv = mode == FolnerMode::Conjugation ? g.inverse(gi) : 0;
    for (std::uint64_t x : t) {
      std::uint64_t y = g.op(gi, x);
      if (mode == FolnerMode::Conjugation) y = g.op(y, ginv);
      img[y / 64] |= 1ull << (y % 64);
    }
    std::uint64_t d = 0;
    for (std::uint64_t w = 0; w < words; ++w)
      d += static_cast<std::uint64_t>(__builtin_popcountll(img[w] ^ t_bits[w]));
    worst = std::max(worst, d);
  }
  return Rational(static_cast<std::int64_t>(worst), static_cast<std::int64_t>(t.size()));
}

CertifyResult certify(const Group& g, const std::vector<std::uint64_t>& s,
                      const std::vector<std::uint64_t>& t, const Rational& epsilon,
                      FolnerMode mode, bool exclude_identity) {
  if (exclude_identity && mode == FolnerMode::Conjugation) {
    std::uint64_t e = g.identity();
    for (std::uint64_t x : t)
      if (x == e)
        throw Error(Errc::BadInput,
                    "T contains the identity but the G\\{e} convention is on");
  }
  Rational d = folner_defect(g, s, t, mode);
  CertifyResult res{std::nullopt, d};
  if (d < epsilon) {
    FolnerCertificate cert;
    cert.mode = mode;
    cert.group = g.spec();
    cert.s = s;
    cert.t = t;
    std::sort(cert.s.begin(), cert.s.end());
    std::sort(cert.t.begin(), cert.t.end());
    cert.epsilon = epsilon;
    cert.defect = d;
    cert.exclude_identity = exclude_identity && mode == FolnerMode::Conjugation;
    res.certificate = cert;
  }
  return res;
}

std::string FolnerCertificate::to_json(const Group& g) const {
  json rec;
  rec["mode"] = folner_mode_name(mode);
  rec["group"] = group;
  json sj = json::array(), tj = json::array();
  for (std::uint64_t x : s) sj.push_back(g.describe(x));
  for (std::uint64_t x : t) tj.push_back(g.describe(x));
  rec["S"] = sj;
  rec["T"] = tj;
  rec["epsilon"] = epsilon.str();
  rec["defect"] = defect.str();
  rec["exclude_identity"] = exclude_identity;
  rec["status"] = "certified";
  return rec.dump(2);
}

bool verify_certificate_json(const std::string& json_text, std::uint64_t budget) {
  json rec = json::parse(json_text, nullptr, false);
  if (rec.is_discarded()) return false;
  try {
    GroupPtr g = parse_group_spec(rec.at("group").get<std::string>(), budget);
    FolnerMode mode = rec.at("mode").get<std::string>() == "translation"
                          ? FolnerMode::Translation
                          : FolnerMode::Conjugation;
    auto lookup = [&](const json& arr) {
      std::vector<std::uint64_t> out;
      for (const auto& e : arr) {
        auto idx = g->find(e.get<std::string>());
        if (!idx) throw Error(Errc::BadInput, "unknown element " + e.dump());
        out.push_back(*idx);
      }
      return out;
    };
    std::vector<std::uint64_t> s = lookup(rec.at("S")), t = lookup(rec.at("T"));
    Rational eps = Rational::parse(rec.at("epsilon").get<std::string>());
    Rational stored = Rational::parse(rec.at("defect").get<std::string>());
    Rational fresh = folner_defect(*g, s, t, mode);
    if (!(fresh == stored)) return false;
    if (rec.value("exclude_identity", false)) {
      std::uint64_t e = g->identity();
      for (std::uint64_t x : t)
        if (x == e) return false;
    }
    return fresh < eps;
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Minimal search

namespace {

// Position maps of the S-actions over the search universe.
struct SearchSpace {
  std::vector<std::uint64_t> universe;          // positions -> element indices
  std::vector<std::uint32_t> pos_of;            // element index -> position (or npos)
  std::vector<std::vector<std::uint32_t>> acts; // per g: position -> position
  static constexpr std::uint32_t npos = 0xffffffffu;
};

SearchSpace build_space(const Group& g, const std::vector<std::uint64_t>& s,
                        FolnerMode mode, bool exclude) {
  SearchSpace sp;
  std::uint64_t n = g.order(), e = g.identity();
  sp.pos_of.assign(n, SearchSpace::npos);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (exclude && i == e) continue;
    sp.pos_of[i] = static_cast<std::uint32_t>(sp.universe.size());
    sp.universe.push_back(i);
  }
  for (std::uint64_t gi : s) {
    std::vector<std::uint32_t> act(sp.universe.size());
    std::uint64_t ginv = g.inverse(gi);
    for (std::size_t p = 0; p < sp.universe.size(); ++p) {
      std::uint64_t y = g.op(gi, sp.universe[p]);
      if (mode == FolnerMode::Conjugation) y = g.op(y, ginv);
      act[p] = sp.pos_of[y];
    }
    sp.acts.push_back(std::move(act));
  }
  return sp;
}

// Orbits of the universe under the S-actions (the invariant building blocks:
// coset pieces in Translation mode, conjugation orbits in Conjugation mode),
// sorted by least member.
std::vector<std::vector<std::uint32_t>> action_orbits(const SearchSpace& sp) {
  std::size_t u = sp.universe.size();
  std::vector<char> seen(u, 0);
  std::vector<std::vector<std::uint32_t>> orbits;
  for (std::uint32_t start = 0; start < u; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> orb{start}, queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      std::uint32_t x = queue.back();
      queue.pop_back();
      for (const auto& act : sp.acts) {
        std::uint32_t y = act[x];
        if (!seen[y]) {
          seen[y] = 1;
          orb.push_back(y);
          queue.push_back(y);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    orbits.push_back(std::move(orb));
  }
  return orbits;  // already ordered by least member: starts scan ascending
}

// Achievable subset sums of orbit sizes, as a bitset.
std::vector<std::uint64_t> orbit_sum_reach(const std::vector<std::vector<std::uint32_t>>& orbits,
                                           std::uint64_t max_sum) {
  std::uint64_t words = max_sum / 64 + 1;
  std::vector<std::uint64_t> reach(words, 0);
  reach[0] = 1;  // empty union
  for (const auto& orb : orbits) {
    std::uint64_t s = orb.size();
    std::uint64_t word_shift = s / 64, bit_shift = s % 64;
    for (std::uint64_t w = words; w-- > word_shift;) {
      std::uint64_t v = reach[w - word_shift] << bit_shift;
      if (bit_shift && w > word_shift) v |= reach[w - word_shift - 1] >> (64 - bit_shift);
      reach[w] |= v;
    }
  }
  return reach;
}

bool reach_test(const std::vector<std::uint64_t>& reach, std::uint64_t sum) {
  std::uint64_t w = sum / 64;
  return w < reach.size() && ((reach[w] >> (sum % 64)) & 1);
}

// Lexicographically least union of orbits with total size exactly m
// (prefer-include greedy with tail feasibility).
std::optional<std::vector<std::uint32_t>> lex_least_union(
    const std::vector<std::vector<std::uint32_t>>& orbits, std::uint64_t m) {
  std::size_t k = orbits.size();
  // tail[i] = sums achievable with orbits i..k-1
  std::vector<std::vector<std::uint64_t>> tail(k + 1);
  tail[k] = orbit_sum_reach({}, m);
  for (std::size_t i = k; i-- > 0;) {
    tail[i] = tail[i + 1];
    std::uint64_t s = orbits[i].size();
    std::uint64_t words = tail[i].size();
    std::uint64_t word_shift = s / 64, bit_shift = s % 64;
    for (std::uint64_t w = words; w-- > word_shift;) {
      std::uint64_t v = tail[i + 1][w - word_shift] << bit_shift;
      if (bit_shift && w > word_shift)
        v |= tail[i + 1][w - word_shift - 1] >> (64 - bit_shift);
      tail[i][w] |= v;
    }
  }
  if (!reach_test(tail[0], m)) return std::nullopt;
  std::vector<std::uint32_t> out;
  std::uint64_t rem = m;
  for (std::size_t i = 0; i < k && rem > 0; ++i) {
    std::uint64_t s = orbits[i].size();
    if (s <= rem && reach_test(tail[i + 1], rem - s)) {
      out.insert(out.end(), orbits[i].begin(), orbits[i].end());
      rem -= s;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> positions_to_indices(const SearchSpace& sp,
                                                const std::vector<std::uint32_t>& positions) {
  std::vector<std::uint64_t> out;
  out.reserve(positions.size());
  for (std::uint32_t p : positions) out.push_back(sp.universe[p]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> mask_to_indices(const SearchSpace& sp, std::uint64_t mask) {
  std::vector<std::uint64_t> out;
  while (mask) {
    int p = __builtin_ctzll(mask);
    mask &= mask - 1;
    out.push_back(sp.universe[static_cast<std::uint32_t>(p)]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

constexpr std::uint64_t kExactUniverseCap = 60;  // exact sweeps only at desk scale
constexpr std::uint64_t kShrinkCap = 512;        // greedy shrink only on small seeds

}  // namespace

SearchResult min_folner_search(const Group& g, const std::vector<std::uint64_t>& s,
                               const Rational& epsilon, FolnerMode mode,
                               std::uint64_t min_size, const SearchOptions& opts) {
  bool exclude = opts.exclude_identity && mode == FolnerMode::Conjugation;
  if (min_size == 0) min_size = 1;
  SearchSpace sp = build_space(g, s, mode, exclude);
  std::uint64_t u = sp.universe.size();

  SearchResult res;
  res.lower_bound = min_size;
  if (min_size > u || !(Rational(0, 1) < epsilon)) {
    res.status = SearchStatus::Exhausted;
    return res;
  }

  auto make_certificate = [&](const std::vector<std::uint64_t>& t) {
    CertifyResult c = certify(g, s, t, epsilon, mode, exclude);
    return c;
  };

  auto orbits = action_orbits(sp);

  std::uint64_t exhausted_below = min_size;  // sizes in [min_size, this) ruled out
  bool budget_hit = false;

  if (u <= kExactUniverseCap) {
    kernels::SweepInput sweep;
    sweep.universe = static_cast<unsigned>(u);
    sweep.epsilon = epsilon;
    for (const auto& act : sp.acts) {
      std::vector<std::uint8_t> a8(u);
      for (std::size_t p = 0; p < u; ++p) a8[p] = static_cast<std::uint8_t>(act[p]);
      sweep.actions.push_back(std::move(a8));
    }
    for (std::uint64_t m = min_size; m <= u; ++m) {
      bool nonzero_defect_possible = Rational(2, static_cast<std::int64_t>(m)) < epsilon;
      if (!nonzero_defect_possible) {
        // any witness of this size is invariant, hence a union of orbits
        if (auto positions = lex_least_union(orbits, m)) {
          auto t = positions_to_indices(sp, *positions);
          auto c = make_certificate(t);
          res.status = SearchStatus::Exact;
          res.witness = c.certificate;
          res.lower_bound = m;
          return res;
        }
        exhausted_below = m + 1;
        continue;
      }
      std::uint64_t count = kernels::binomial_saturating(static_cast<unsigned>(u),
                                                         static_cast<unsigned>(m));
      if (res.examined + count > opts.subset_budget) {
        budget_hit = true;
        exhausted_below = m;
        break;
      }
      auto hit = kernels::subset_sweep(sweep, static_cast<unsigned>(m),
                                       opts.parallel && kernels::parallel_available(),
                                       &res.examined);
      if (hit) {
        auto t = mask_to_indices(sp, *hit);
        auto c = make_certificate(t);
        res.status = SearchStatus::Exact;
        res.witness = c.certificate;
        res.lower_bound = m;
        return res;
      }
      exhausted_below = m + 1;
    }
    if (!budget_hit) {
      // every admissible size ruled out
      res.status = SearchStatus::Exhausted;
      res.lower_bound = u + 1;
      return res;
    }
  }

  res.lower_bound = exhausted_below;
  if (!opts.allow_heuristic) {
    res.status = SearchStatus::Exhausted;
    return res;
  }

  // Seed phase: smallest invariant orbit union of size >= min_size, shrunk
  // greedily while the certificate survives.
  std::uint64_t total = 0;
  for (const auto& orb : orbits) total += orb.size();
  auto reach = orbit_sum_reach(orbits, total);
  std::uint64_t target = 0;
  for (std::uint64_t m = min_size; m <= total; ++m) {
    if (reach_test(reach, m)) {
      target = m;
      break;
    }
  }
  if (target == 0) {
    res.status = SearchStatus::Exhausted;
    return res;
  }
  auto seed_positions = lex_least_union(orbits, target);
  std::vector<std::uint64_t> t = positions_to_indices(sp, *seed_positions);

  if (t.size() <= kShrinkCap) {
    bool changed = true;
    while (changed && t.size() > min_size) {
      changed = false;
      for (std::size_t i = 0; i < t.size(); ++i) {
        std::vector<std::uint64_t> cand = t;
        cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(i));
        if (folner_defect(g, s, cand, mode) < epsilon) {
          t = std::move(cand);
          changed = true;
          break;
        }
      }
    }
  }

  auto c = make_certificate(t);
  res.witness = c.certificate;
  res.status = (res.witness && t.size() == res.lower_bound) ? SearchStatus::Exact
                                                            : SearchStatus::Heuristic;
  return res;
}

// ---------------------------------------------------------------------------
// Profiles

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
  for (std::uint64_t v : {a, b, c}) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
  }
  return h;
}

// xorshift-style deterministic stream, stable across platforms
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ? seed : 1) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
};

}  // namespace

UniformityProfile profile_uniform(const std::vector<GroupPtr>& family, FolnerMode mode,
                                  std::uint32_t n_lo, std::uint32_t n_hi,
                                  const ProfileOptions& opts) {
  if (family.empty() || n_lo == 0 || n_hi < n_lo)
    throw Error(Errc::BadInput, "profile needs a family and 1 <= n_lo <= n_hi");
  UniformityProfile prof;
  prof.mode = mode;
  prof.seed = opts.seed;
  prof.n_lo = n_lo;
  prof.n_hi = n_hi;
  prof.exclude_identity = opts.exclude_identity && mode == FolnerMode::Conjugation;
  {
    std::string fam;
    for (const auto& g : family) {
      if (!fam.empty()) fam += ";";
      fam += g->spec();
    }
    prof.family = fam;
  }

  for (std::size_t li = 0; li < family.size(); ++li) {
    const Group& g = *family[li];
    // adversarial sample pool: representatives of the largest classes
    auto part = kernels::conjugacy_partition(g, opts.parallel && kernels::parallel_available());
    std::vector<std::size_t> by_size(part.reps.size());
    for (std::size_t i = 0; i < by_size.size(); ++i) by_size[i] = i;
    std::sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
      if (part.sizes[a] != part.sizes[b]) return part.sizes[a] > part.sizes[b];
      return part.reps[a] < part.reps[b];
    });

    for (std::uint32_t n = n_lo; n <= n_hi; ++n) {
      for (std::uint32_t sample = 0; sample < opts.samples_per_cell && sample < 3; ++sample) {
        ProfileRow row;
        row.level = g.spec();
        row.n = n;
        row.sample = sample;
        std::vector<std::uint64_t> s;
        if (sample == 0) {
          row.sampler = "generators";
          auto gens = g.generators();
          for (std::size_t i = 0; i < gens.size() && s.size() < n; ++i) s.push_back(gens[i]);
          if (s.empty()) s.push_back(g.identity());
        } else if (sample == 1) {
          row.sampler = "random";
          Rng rng(mix_seed(opts.seed, li, n, sample));
          while (s.size() < n && s.size() < g.order()) {
            std::uint64_t x = rng.next() % g.order();
            if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
          }
        } else {
          row.sampler = "largest-classes";
          for (std::size_t i = 0; i < by_size.size() && s.size() < n; ++i)
            s.push_back(part.reps[by_size[i]]);
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        row.s = s;

        SearchOptions sopts;
        sopts.subset_budget = opts.subset_budget;
        sopts.exclude_identity = opts.exclude_identity;
        sopts.parallel = opts.parallel;
        std::uint64_t min_size = mode == FolnerMode::Conjugation ? n : 1;
        auto out = min_folner_search(g, s, Rational(1, n), mode, min_size, sopts);
        row.status = out.status;
        if (out.witness) {
          row.min_t = out.witness->t.size();
          row.defect = out.witness->defect;
          row.t = out.witness->t;
        }
        prof.rows.push_back(std::move(row));
      }
    }
  }
  return prof;
}

std::string UniformityProfile::to_csv(const std::vector<GroupPtr>&) const {
  std::string out;
  out += "# sl2lab profile csv v1\n";
  out += "# family=" + family + " mode=" + folner_mode_name(mode) +
         " seed=" + std::to_string(seed) +
         " exclude_identity=" + (exclude_identity ? "1" : "0") + "\n";
  out += "level,n,S_size,min_T,defect,status\n";
  for (const auto& row : rows) {
    out += row.level + "," + std::to_string(row.n) + "," + std::to_string(row.s.size()) +
           "," + std::to_string(row.min_t) + "," + row.defect.str() + "," +
           search_status_name(row.status) + "\n";
  }
  return out;
}

std::string UniformityProfile::to_json(const std::vector<GroupPtr>& levels) const {
  json rec;
  rec["mode"] = folner_mode_name(mode);
  rec["family"] = family;
  rec["seed"] = seed;
  rec["n_lo"] = n_lo;
  rec["n_hi"] = n_hi;
  rec["exclude_identity"] = exclude_identity;
  json rows_json = json::array();
  auto level_of = [&](const std::string& spec) -> const Group* {
    for (const auto& g : levels)
      if (g->spec() == spec) return g.get();
    return nullptr;
  };
  for (const auto& row : rows) {
    json r;
    r["level"] = row.level;
    r["n"] = row.n;
    r["sample"] = row.sample;
    r["sampler"] = row.sampler;
    const Group* g = level_of(row.level);
    json sj = json::array(), tj = json::array();
    for (std::uint64_t x : row.s) sj.push_back(g ? g->describe(x) : std::to_string(x));
    for (std::uint64_t x : row.t) tj.push_back(g ? g->describe(x) : std::to_string(x));
    r["S"] = sj;
    r["T"] = tj;
    r["min_T"] = row.min_t;
    r["defect"] = row.defect.str();
    r["status"] = search_status_name(row.status);
    rows_json.push_back(r);
  }
  rec["rows"] = rows_json;
  // empirical size bound per (level, n): the worst sampled minimal |T|
  json fhat = json::array();
  for (const auto& g : levels) {
    for (std::uint32_t n = n_lo; n <= n_hi; ++n) {
      std::uint64_t worst = 0;
      bool all_exact = true, any_missing = false;
      for (const auto& row : rows) {
        if (row.level != g->spec() || row.n != n) continue;
        if (!row.min_t)
          any_missing = true;
        else
          worst = std::max(worst, row.min_t);
        if (row.status != SearchStatus::Exact) all_exact = false;
      }
      json cell;
      cell["level"] = g->spec();
      cell["n"] = n;
      if (any_missing)
        cell["fhat"] = nullptr;
      else
        cell["fhat"] = worst;
      cell["status"] = any_missing ? "exhausted" : (all_exact ? "exact" : "heuristic");
      fhat.push_back(cell);
    }
  }
  rec["fhat"] = fhat;
  return rec.dump(2);
}

// ---------------------------------------------------------------------------
// Product lift

FolnerCertificate product_lift(const FolnerCertificate& cert, const Group& product,
                               const Group& left, const Group& right,
                               const std::vector<std::uint64_t>& s_prime) {
  if (cert.mode != FolnerMode::Conjugation)
    throw Error(Errc::BadInput, "product lift applies to conjugation certificates");
  std::uint64_t m = right.order();
  for (std::uint64_t sp : s_prime) {
    std::uint64_t first = sp / m;
    if (std::find(cert.s.begin(), cert.s.end(), first) == cert.s.end())
      throw Error(Errc::ProjectionMismatch,
                  "element " + product.describe(sp) + " projects to " +
                      left.describe(first) + " outside the certified S");
  }
  std::vector<std::uint64_t> t_lift;
  std::uint64_t e_r = right.identity();
  for (std::uint64_t t : cert.t) t_lift.push_back(t * m + e_r);
  std::sort(t_lift.begin(), t_lift.end());

  Rational lifted = folner_defect(product, s_prime, t_lift, FolnerMode::Conjugation);
  FolnerCertificate out;
  out.mode = FolnerMode::Conjugation;
  out.group = product.spec();
  out.s = s_prime;
  std::sort(out.s.begin(), out.s.end());
  out.t = t_lift;
  out.epsilon = cert.epsilon;
  out.defect = lifted;
  out.exclude_identity = cert.exclude_identity;
  if (!(lifted < cert.epsilon))
    throw Error(Errc::BadInput, "lifted defect lost certification");  // unreachable
  return out;
}

// ---------------------------------------------------------------------------
// Free words

Mat2<RatFunc> default_free_gen_a() {
  RatFunc z, o = RatFunc::from_poly(Gf2Poly::one()), t = RatFunc::t();
  return Mat2<RatFunc>(o, t, z, o);
}

Mat2<RatFunc> default_free_gen_b() {
  RatFunc z, o = RatFunc::from_poly(Gf2Poly::one()), t = RatFunc::t();
  return Mat2<RatFunc>(o, z, t, o);
}

namespace {

int entry_degree_max(const Mat2<RatFunc>& m) {
  int best = 0;
  for (const RatFunc* e : {&m.a, &m.b, &m.c, &m.d}) {
    if (auto d = e->degree()) best = std::max(best, *d);
  }
  return best;
}

const char* kLetterNames[4] = {"a", "a^-1", "b", "b^-1"};

void free_word_dfs(const std::vector<Mat2<RatFunc>>& letters, unsigned max_len,
                   std::vector<int>& word, const Mat2<RatFunc>& value,
                   FreeWordReport& report) {
  unsigned len = static_cast<unsigned>(word.size());
  if (len > 0) {
    auto& bucket = report.per_length[len - 1];
    bucket.count += 1;
    bucket.max_entry_degree = std::max(bucket.max_entry_degree, entry_degree_max(value));
    if (value.is_identity()) {
      std::string w;
      for (int l : word) {
        if (!w.empty()) w += " ";
        w += kLetterNames[l];
      }
      report.identity_words.push_back(w);
      report.no_relation = false;
    }
  }
  if (len == max_len) return;
  for (int l = 0; l < 4; ++l) {
    if (!word.empty() && (word.back() ^ 1) == l) continue;  // cancellation: not reduced
    word.push_back(l);
    free_word_dfs(letters, max_len, word, value * letters[static_cast<std::size_t>(l)],
                  report);
    word.pop_back();
  }
}

}  // namespace

FreeWordReport free_words_check(const Mat2<RatFunc>& a, const Mat2<RatFunc>& b,
                                unsigned max_len) {
  if (max_len > 12) throw Error(Errc::TooLarge, "word length cap is 12 (3^len growth)");
  FreeWordReport report;
  report.gen_a = a.str();
  report.gen_b = b.str();
  report.max_len = max_len;
  report.per_length.assign(max_len, {});
  std::vector<Mat2<RatFunc>> letters{a, a.inverse(), b, b.inverse()};
  std::vector<int> word;
  free_word_dfs(letters, max_len, word, Mat2<RatFunc>::identity_like(a.a), report);
  return report;
}

std::string FreeWordReport::to_json() const {
  json rec;
  rec["generator_a"] = gen_a;
  rec["generator_b"] = gen_b;
  rec["max_len"] = max_len;
  json lens = json::array();
  for (unsigned i = 0; i < per_length.size(); ++i) {
    json l;
    l["length"] = i + 1;
    l["count"] = per_length[i].count;
    l["max_entry_degree"] = per_length[i].max_entry_degree;
    lens.push_back(l);
  }
  rec["per_length"] = lens;
  rec["identity_words"] = identity_words;
  rec["no_relation"] = no_relation;
  return rec.dump(2);
}

}  // namespace sl2lab
