#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sl2lab/amen.hpp"
#include "sl2lab/cli_support.hpp"
#include "sl2lab/folog.hpp"
#include "sl2lab/groups.hpp"
#include "sl2lab/kernels.hpp"
#include "sl2lab/matgrp.hpp"

namespace sl2lab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::shared_ptr<const Gf2Tower> tower_for_degree(unsigned k, const RunConfig& cfg) {
  for (unsigned d : cfg.tower)
    if (d == k) return std::make_shared<const Gf2Tower>(cfg.tower);
  std::vector<unsigned> degrees;
  if (k != 1) degrees.push_back(1);
  degrees.push_back(k);
  if (2 * k <= Gf2Tower::kMaxDegree) degrees.push_back(2 * k);
  return std::make_shared<const Gf2Tower>(degrees);
}

std::optional<unsigned> sl2_gf2_degree(const std::string& spec) {
  if (spec.rfind("sl2:gf2_", 0) != 0) return std::nullopt;
  return static_cast<unsigned>(std::stoul(spec.substr(8)));
}

std::vector<std::uint64_t> parse_element_list(const Group& g, const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const std::string& tok : split_list(text, ';')) {
    auto idx = g.find(tok);
    if (!idx) throw Error(Errc::BadInput, "element '" + tok + "' not in " + g.spec());
    out.push_back(*idx);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct CommandContext {
  RunConfig cfg;
  std::string command;
  std::string inputs;  // canonical inputs for the cache key
  CommandResult result;
  bool from_cache = false;

  // Returns true when a cached record satisfied the call.
  bool try_cache() {
    if (cfg.out_dir.empty()) return false;
    std::string key = cache_key(command, inputs, cfg);
    if (auto stored = cache_lookup(cfg.out_dir, key)) {
      json rec = json::parse(*stored, nullptr, false);
      if (!rec.is_discarded() && rec.contains("output")) {
        result.output = rec["output"].get<std::string>();
        result.exit_code = rec.value("exit_code", 0);
        result.note = "cache: hit " + key;
        from_cache = true;
        return true;
      }
    }
    result.note = "cache: miss " + key;
    return false;
  }

  void persist() {
    if (cfg.out_dir.empty() || from_cache) return;
    std::string key = cache_key(command, inputs, cfg);
    json rec;
    rec["artifact_version"] = kArtifactVersion;
    rec["command"] = command;
    rec["config"] = cfg.canonical();
    rec["config_hash"] = hex64(cfg.hash());
    rec["inputs"] = inputs;
    rec["output"] = result.output;
    rec["exit_code"] = result.exit_code;
    rec["timestamp"] = iso_timestamp();
    cache_store(cfg.out_dir, key, rec.dump(2));
  }
};

// --------------------------------------------------------------------------
// centralizer

void cmd_centralizer(CommandContext& ctx, const std::string& group_spec,
                     const std::string& element) {
  ctx.inputs = "group=" + group_spec + ";element=" + element;
  if (ctx.try_cache()) return;
  json rec;
  rec["group"] = group_spec;
  rec["element"] = element;
  if (auto deg = sl2_gf2_degree(group_spec)) {
    auto tower = tower_for_degree(*deg, ctx.cfg);
    Mat2<Gf2k> m = parse_mat2_gf2(element, *tower);
    if (m.is_identity())
      throw Error(Errc::IdentityInput, "the identity has the whole group as centralizer");
    const Gf2Level& level = tower->level(*deg);
    CentralizerDescription desc = centralizer_structural(m);
    auto group_elems = enumerate_sl2(all_field_elements(level), ctx.cfg.budget_enumeration);
    auto brute = centralizer_bruteforce(m, group_elems);
    auto predicted = materialize_centralizer(desc, m);
    bool agree = predicted == brute;
    rec["q"] = level.order();
    rec["kind"] = centralizer_kind_name(desc.kind);
    rec["order"] = desc.order;
    rec["order_formula"] = desc.order_formula;
    rec["conjugator"] = desc.conjugator.str();
    rec["class_size"] = group_elems.size() / desc.order;
    rec["bruteforce_order"] = brute.size();
    rec["agreement"] = agree;
    ctx.result.exit_code = agree ? 0 : 2;
  } else if (group_spec.rfind("sl2:gfp_", 0) == 0) {
    unsigned p = static_cast<unsigned>(std::stoul(group_spec.substr(8)));
    Mat2<Gfp> m = parse_mat2_gfp(element);
    if (m.is_identity())
      throw Error(Errc::IdentityInput, "the identity has the whole group as centralizer");
    auto group_elems =
        enumerate_sl2(all_field_elements_gfp(p), ctx.cfg.budget_enumeration);
    auto brute = centralizer_bruteforce(m, group_elems);
    bool abelian = true;
    std::string w1, w2;
    for (std::size_t i = 0; i < brute.size() && abelian; ++i)
      for (std::size_t j = i + 1; j < brute.size() && abelian; ++j)
        if (!(brute[i] * brute[j] == brute[j] * brute[i])) {
          abelian = false;
          w1 = brute[i].str();
          w2 = brute[j].str();
        }
    rec["q"] = p;
    rec["order"] = brute.size();
    rec["class_size"] = group_elems.size() / brute.size();
    rec["centralizer_abelian"] = abelian;
    if (!abelian) {
      rec["ct_violation"] = json::array({element, w1, w2});
      rec["note"] = "non-CT witness";
    }
  } else {
    throw Error(Errc::BadInput, "centralizer expects an sl2:gf2_<k> or sl2:gfp_<p> group");
  }
  ctx.result.output = rec.dump(2) + "\n";
}

// --------------------------------------------------------------------------
// ct

void cmd_ct(CommandContext& ctx, const std::string& group_spec) {
  ctx.inputs = "group=" + group_spec;
  if (ctx.try_cache()) return;
  GroupPtr g = parse_group_spec(group_spec, ctx.cfg.budget_enumeration);
  auto scan = kernels::ct_scan(*g, ctx.cfg.parallel && kernels::parallel_available());
  json rec;
  rec["group"] = group_spec;
  rec["order"] = g->order();
  rec["ct"] = scan.ct;
  if (!scan.ct)
    rec["witness"] = json::array(
        {g->describe(scan.g), g->describe(scan.h1), g->describe(scan.h2)});
  ctx.result.output = rec.dump(2) + "\n";
}

// --------------------------------------------------------------------------
// classes

void cmd_classes(CommandContext& ctx, const std::string& group_spec) {
  ctx.inputs = "group=" + group_spec;
  if (ctx.try_cache()) return;
  GroupPtr g = parse_group_spec(group_spec, ctx.cfg.budget_enumeration);
  auto part = kernels::conjugacy_partition(*g, ctx.cfg.parallel && kernels::parallel_available());
  json rows = json::array();
  std::vector<std::uint64_t> sizes = part.sizes;
  for (std::size_t c = 0; c < part.reps.size(); ++c) {
    json row;
    row["group"] = group_spec;
    if (auto* lvl = sl2_level_of(*g))
      row["q"] = lvl->order();
    else
      row["q"] = nullptr;
    row["element"] = g->describe(part.reps[c]);
    row["class_size"] = part.sizes[c];
    row["order"] = g->order() / part.sizes[c];  // centralizer order
    if (auto m = sl2_matrix_of(*g, part.reps[c])) {
      row["kind"] = m->is_identity()
                        ? json("Identity")
                        : json(centralizer_kind_name(centralizer_structural(*m).kind));
    } else {
      row["kind"] = nullptr;
    }
    rows.push_back(row);
  }
  std::sort(sizes.begin(), sizes.end());
  json rec;
  rec["group"] = group_spec;
  rec["order"] = g->order();
  rec["class_count"] = part.reps.size();
  rec["class_sizes"] = sizes;
  rec["classes"] = rows;
  ctx.result.output = rec.dump(2) + "\n";
}

// --------------------------------------------------------------------------
// icc

void cmd_icc(CommandContext& ctx, const std::string& group_spec, const std::string& element,
             std::uint64_t count, const std::string& levels_text) {
  ctx.inputs = "group=" + group_spec + ";element=" + element + ";count=" +
               std::to_string(count) + ";levels=" + levels_text;
  if (ctx.try_cache()) return;
  auto deg = sl2_gf2_degree(group_spec);
  if (!deg) throw Error(Errc::BadInput, "icc expects an sl2:gf2_<k> group");
  std::vector<unsigned> degrees{*deg};
  if (!levels_text.empty()) {
    for (const auto& tok : split_list(levels_text, ','))
      degrees.push_back(static_cast<unsigned>(std::stoul(tok)));
  }
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  if (degrees.front() != 1) degrees.insert(degrees.begin(), 1);
  auto tower = std::make_shared<const Gf2Tower>(degrees);
  Mat2<Gf2k> m = parse_mat2_gf2(element, *tower);

  json rec;
  rec["group"] = group_spec;
  rec["element"] = element;
  auto family = icc_witness_family(m, count);
  json fam = json::array();
  for (const auto& w : family) {
    json row;
    row["conjugator"] = w.conjugator.str();
    row["conjugate"] = w.conjugate.str();
    fam.push_back(row);
  }
  rec["witnesses"] = fam;
  if (!levels_text.empty()) {
    std::vector<unsigned> growth_levels;
    for (const auto& tok : split_list(levels_text, ','))
      growth_levels.push_back(static_cast<unsigned>(std::stoul(tok)));
    auto sizes = class_growth_along_tower(m, growth_levels, ctx.cfg.budget_enumeration);
    json growth = json::array();
    for (std::size_t i = 0; i < growth_levels.size(); ++i) {
      json row;
      row["degree"] = growth_levels[i];
      row["q"] = 1ull << growth_levels[i];
      row["class_size"] = sizes[i];
      growth.push_back(row);
    }
    rec["class_growth"] = growth;
  }
  ctx.result.output = rec.dump(2) + "\n";
}

// --------------------------------------------------------------------------
// folner / cfolner

void cmd_folner(CommandContext& ctx, FolnerMode mode, const std::string& group_spec,
                const std::string& s_text, const std::string& epsilon_text,
                std::uint64_t min_size) {
  Rational eps = epsilon_text.empty() ? ctx.cfg.epsilon : Rational::parse(epsilon_text);
  ctx.inputs = "group=" + group_spec + ";s=" + s_text + ";epsilon=" + eps.str() +
               ";min_size=" + std::to_string(min_size) +
               ";mode=" + folner_mode_name(mode);
  if (ctx.try_cache()) return;
  GroupPtr g = parse_group_spec(group_spec, ctx.cfg.budget_enumeration);
  std::vector<std::uint64_t> s = parse_element_list(*g, s_text);

  SearchOptions opts;
  opts.subset_budget = ctx.cfg.budget_subset;
  opts.exclude_identity = ctx.cfg.exclude_identity;
  opts.parallel = ctx.cfg.parallel && kernels::parallel_available();
  SearchResult res = min_folner_search(*g, s, eps, mode, min_size, opts);

  json rec;
  rec["group"] = group_spec;
  rec["mode"] = folner_mode_name(mode);
  rec["epsilon"] = eps.str();
  rec["min_size"] = min_size;
  rec["status"] = search_status_name(res.status);
  rec["lower_bound"] = res.lower_bound;
  rec["examined"] = res.examined;
  if (res.witness) {
    std::string cert = res.witness->to_json(*g);
    if (!verify_certificate_json(cert, ctx.cfg.budget_enumeration))
      throw Error(Errc::BadInput, "certificate failed re-verification");
    rec["certificate"] = json::parse(cert);
    ctx.result.exit_code = 0;
  } else {
    std::uint64_t universe =
        g->order() - ((mode == FolnerMode::Conjugation && ctx.cfg.exclude_identity) ? 1 : 0);
    bool proven_impossible = res.lower_bound > universe;
    ctx.result.exit_code = proven_impossible ? 2 : 3;
    rec["refused"] = proven_impossible;
  }
  ctx.result.output = rec.dump(2) + "\n";
}

// --------------------------------------------------------------------------
// profile

std::vector<std::string> expand_family(const std::string& family) {
  std::vector<std::string> specs;
  for (const std::string& part : split_list(family, ';')) {
    std::size_t dots = part.find("..");
    if (part.rfind("sym:", 0) == 0 && dots != std::string::npos) {
      unsigned lo = static_cast<unsigned>(std::stoul(part.substr(4, dots - 4)));
      unsigned hi = static_cast<unsigned>(std::stoul(part.substr(dots + 2)));
      for (unsigned n = lo; n <= hi; ++n) specs.push_back("sym:" + std::to_string(n));
    } else if (part.rfind("sl2:tower(", 0) == 0 && part.back() == ')') {
      std::string body = part.substr(10, part.size() - 11);
      for (const auto& tok : split_list(body, ','))
        specs.push_back("sl2:gf2_" + tok);
    } else {
      specs.push_back(part);
    }
  }
  return specs;
}

void cmd_profile(CommandContext& ctx, const std::string& family, FolnerMode mode,
                 std::uint32_t n_lo, std::uint32_t n_hi, std::uint32_t samples) {
  ctx.inputs = "family=" + family + ";mode=" + folner_mode_name(mode) +
               ";n=" + std::to_string(n_lo) + ".." + std::to_string(n_hi) +
               ";samples=" + std::to_string(samples);
  if (ctx.try_cache()) return;
  std::vector<GroupPtr> levels;
  for (const auto& spec : expand_family(family))
    levels.push_back(parse_group_spec(spec, ctx.cfg.budget_enumeration));

  ProfileOptions opts;
  opts.seed = ctx.cfg.seed;
  opts.samples_per_cell = samples;
  opts.subset_budget = ctx.cfg.budget_subset;
  opts.exclude_identity = ctx.cfg.exclude_identity;
  opts.parallel = ctx.cfg.parallel && kernels::parallel_available();
  UniformityProfile prof = profile_uniform(levels, mode, n_lo, n_hi, opts);

  std::string csv = prof.to_csv(levels);
  std::string js = prof.to_json(levels);
  if (!ctx.cfg.out_dir.empty()) {
    fs::create_directories(ctx.cfg.out_dir);
    std::ofstream(fs::path(ctx.cfg.out_dir) / "profile.csv", std::ios::trunc) << csv;
    std::ofstream(fs::path(ctx.cfg.out_dir) / "profile.json", std::ios::trunc) << js;
  }
  ctx.result.output = js + "\n";
}

// --------------------------------------------------------------------------
// fo

void cmd_fo(CommandContext& ctx, const std::string& group_spec, const std::string& sentence,
            const std::string& file) {
  std::vector<std::string> sentences;
  if (!sentence.empty()) sentences.push_back(sentence);
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error(Errc::BadInput, "cannot read sentence file '" + file + "'");
    std::string line;
    while (std::getline(in, line)) {
      std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      std::size_t b = line.find_last_not_of(" \t\r");
      sentences.push_back(line.substr(a, b - a + 1));
    }
  }
  if (sentences.empty()) throw Error(Errc::BadInput, "no sentences given");
  std::string joined;
  for (const auto& s : sentences) joined += s + "\n";
  ctx.inputs = "group=" + group_spec + ";sentences=" + joined;
  if (ctx.try_cache()) return;

  GroupPtr g = parse_group_spec(group_spec, ctx.cfg.budget_enumeration);
  json rows = json::array();
  for (const auto& text : sentences) {
    auto t0 = std::chrono::steady_clock::now();
    folog::FormulaPtr f = folog::parse(text);
    auto fv = folog::free_vars(f);
    if (!fv.empty())
      throw Error(Errc::BadInput, "'" + text + "' is not a sentence: free variable '" +
                                      fv.front() + "'");
    folog::EvalResult ev = folog::evaluate(*g, f, ctx.cfg.budget_eval);
    auto t1 = std::chrono::steady_clock::now();
    json row;
    row["sentence"] = text;
    row["group"] = group_spec;
    row["value"] = ev.value;
    if (!ev.bindings.empty()) {
      json b;
      for (const auto& [var, idx] : ev.bindings) b[var] = g->describe(idx);
      row[ev.value ? "witness" : "counterexample"] = b;
    }
    row["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    rows.push_back(row);
  }
  ctx.result.output = rows.dump(2) + "\n";
}

// --------------------------------------------------------------------------
// freewords

void cmd_freewords(CommandContext& ctx, unsigned max_len, const std::string& gen_a,
                   const std::string& gen_b) {
  ctx.inputs = "max_len=" + std::to_string(max_len) + ";a=" + gen_a + ";b=" + gen_b;
  if (ctx.try_cache()) return;
  Mat2<RatFunc> a = gen_a.empty() ? default_free_gen_a() : parse_mat2_rf2(gen_a);
  Mat2<RatFunc> b = gen_b.empty() ? default_free_gen_b() : parse_mat2_rf2(gen_b);
  FreeWordReport report = free_words_check(a, b, max_len);
  ctx.result.output = report.to_json() + "\n";
}

// --------------------------------------------------------------------------
// cache

void cmd_cache(CommandContext& ctx, const std::string& action) {
  if (ctx.cfg.out_dir.empty())
    throw Error(Errc::BadInput, "cache needs --out <dir>");
  if (action == "list") {
    std::string out;
    for (const auto& key : cache_list(ctx.cfg.out_dir)) out += key + "\n";
    ctx.result.output = out;
  } else if (action == "clear") {
    std::size_t removed = cache_clear(ctx.cfg.out_dir);
    ctx.result.output = "removed " + std::to_string(removed) + " records\n";
  } else {
    throw Error(Errc::BadInput, "cache action must be list or clear");
  }
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"SL2 / Folner / first-order toolbox over finite groups"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed, budget;
  std::optional<bool> exclude_identity;
  bool json_flag = false, serial_flag = false;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--seed", seed, "sampler seed");
  app.add_option("--budget", budget, "enumeration budget (elements)");
  app.add_option("--out", out_dir, "output directory (enables the result cache)");
  app.add_flag("--json", json_flag, "machine-readable output");
  app.add_option("--exclude-identity", exclude_identity,
                 "conjugation-mode G\\{e} convention (default on)");
  app.add_flag("--serial", serial_flag, "disable the OpenMP lanes");

  auto* c_cent = app.add_subcommand("centralizer", "structural + brute-force centralizer");
  std::string group_spec, element, s_text, epsilon_text, levels_text, family, sentence,
      sentence_file, gen_a, gen_b, cache_action;
  std::uint64_t count = 3, min_size = 1;
  std::uint32_t n_lo = 1, n_hi = 3, samples = 3;
  std::string mode_text = "conjugation";
  unsigned max_len = 8;
  c_cent->add_option("--group", group_spec)->required();
  c_cent->add_option("--element", element)->required();

  auto* c_ct = app.add_subcommand("ct", "commutative-transitivity scan");
  c_ct->add_option("--group", group_spec)->required();

  auto* c_icc = app.add_subcommand("icc", "conjugate witness families and class growth");
  c_icc->add_option("--group", group_spec)->required();
  c_icc->add_option("--element", element)->required();
  c_icc->add_option("--count", count);
  c_icc->add_option("--levels", levels_text, "tower degrees for class growth, e.g. 2,4");

  auto* c_classes = app.add_subcommand("classes", "conjugacy class partition");
  c_classes->add_option("--group", group_spec)->required();

  auto* c_folner = app.add_subcommand("folner", "minimal translation Folner set");
  c_folner->add_option("--group", group_spec)->required();
  c_folner->add_option("--s", s_text)->required();
  c_folner->add_option("--epsilon", epsilon_text);
  c_folner->add_option("--min-size", min_size);

  auto* c_cfolner = app.add_subcommand("cfolner", "minimal conjugation Folner set");
  c_cfolner->add_option("--group", group_spec)->required();
  c_cfolner->add_option("--s", s_text)->required();
  c_cfolner->add_option("--epsilon", epsilon_text);
  c_cfolner->add_option("--min-size", min_size);

  auto* c_profile = app.add_subcommand("profile", "uniformity profile over a family");
  c_profile->add_option("--family", family)->required();
  c_profile->add_option("--mode", mode_text, "translation | conjugation");
  c_profile->add_option("--n-lo", n_lo);
  c_profile->add_option("--n-hi", n_hi);
  c_profile->add_option("--samples", samples);

  auto* c_fo = app.add_subcommand("fo", "evaluate first-order sentences");
  c_fo->add_option("--group", group_spec)->required();
  c_fo->add_option("--sentence", sentence);
  c_fo->add_option("--sentences", sentence_file, "file, one sentence per line, # comments");

  auto* c_freewords = app.add_subcommand("freewords", "reduced-word scan over SL2(GF(2)(t))");
  c_freewords->add_option("--max-len", max_len);
  c_freewords->add_option("--gen-a", gen_a);
  c_freewords->add_option("--gen-b", gen_b);

  auto* c_cache = app.add_subcommand("cache", "result cache maintenance");
  c_cache->add_option("action", cache_action, "list | clear")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return CommandResult{0, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return CommandResult{4, "", std::string("argument error: ") + e.what()};
  }

  CommandContext ctx;
  try {
    if (!config_path.empty()) ctx.cfg = RunConfig::from_file(config_path);
    if (seed) ctx.cfg.seed = *seed;
    if (budget) ctx.cfg.budget_enumeration = *budget;
    if (!out_dir.empty()) ctx.cfg.out_dir = out_dir;
    if (json_flag) ctx.cfg.json_output = true;
    if (exclude_identity) ctx.cfg.exclude_identity = *exclude_identity;
    if (serial_flag) ctx.cfg.parallel = false;

    FolnerMode mode = mode_text == "translation" ? FolnerMode::Translation
                                                 : FolnerMode::Conjugation;
    if (c_cent->parsed()) {
      ctx.command = "centralizer";
      cmd_centralizer(ctx, group_spec, element);
    } else if (c_ct->parsed()) {
      ctx.command = "ct";
      cmd_ct(ctx, group_spec);
    } else if (c_icc->parsed()) {
      ctx.command = "icc";
      cmd_icc(ctx, group_spec, element, count, levels_text);
    } else if (c_classes->parsed()) {
      ctx.command = "classes";
      cmd_classes(ctx, group_spec);
    } else if (c_folner->parsed()) {
      ctx.command = "folner";
      cmd_folner(ctx, FolnerMode::Translation, group_spec, s_text, epsilon_text, min_size);
    } else if (c_cfolner->parsed()) {
      ctx.command = "cfolner";
      cmd_folner(ctx, FolnerMode::Conjugation, group_spec, s_text, epsilon_text, min_size);
    } else if (c_profile->parsed()) {
      ctx.command = "profile";
      cmd_profile(ctx, family, mode, n_lo, n_hi, samples);
    } else if (c_fo->parsed()) {
      ctx.command = "fo";
      cmd_fo(ctx, group_spec, sentence, sentence_file);
    } else if (c_freewords->parsed()) {
      ctx.command = "freewords";
      cmd_freewords(ctx, max_len, gen_a, gen_b);
    } else if (c_cache->parsed()) {
      ctx.command = "cache";
      cmd_cache(ctx, cache_action);
    }
    ctx.persist();
  } catch (const Error& e) {
    int code = e.code() == Errc::BudgetExceeded ? 3 : 4;
    return CommandResult{code, "", std::string("error: ") + e.what()};
  }
  return ctx.result;
}

}  // namespace sl2lab
