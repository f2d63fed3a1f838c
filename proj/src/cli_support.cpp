#include "sl2lab/cli_support.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sl2lab/error.hpp"

namespace sl2lab {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* hexd = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = hexd[v & 0xf];
    v >>= 4;
  }
  return s;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    return std::stoull(value);
  } catch (const std::logic_error&) {
    throw Error(Errc::BadInput, "config key '" + key + "' needs an integer, got '" +
                                    value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw Error(Errc::BadInput, "config key '" + key + "' needs a boolean, got '" + value + "'");
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::BadInput, "cannot read config file '" + path + "'");
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::BadInput,
                  path + ":" + std::to_string(lineno) + ": expected key=value");
    cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "tower") {
    std::vector<unsigned> degrees;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ','))
      degrees.push_back(static_cast<unsigned>(parse_u64(key, trim(tok))));
    if (degrees.empty()) throw Error(Errc::BadInput, "tower needs at least one degree");
    tower = degrees;
  } else if (key == "budget.enumeration") {
    budget_enumeration = parse_u64(key, value);
  } else if (key == "budget.subset") {
    budget_subset = parse_u64(key, value);
  } else if (key == "budget.formula") {
    budget_formula_nodes = parse_u64(key, value);
  } else if (key == "budget.eval") {
    budget_eval = parse_u64(key, value);
  } else if (key == "epsilon") {
    epsilon = Rational::parse(value);
  } else if (key == "seed") {
    seed = parse_u64(key, value);
  } else if (key == "out") {
    out_dir = value;
  } else if (key == "exclude_identity") {
    exclude_identity = parse_bool(key, value);
  } else if (key == "json") {
    json_output = parse_bool(key, value);
  } else if (key == "parallel") {
    parallel = parse_bool(key, value);
  } else {
    throw Error(Errc::BadInput, "unknown config key '" + key + "'");
  }
}

std::string RunConfig::canonical() const {
  std::string towers;
  for (unsigned d : tower) {
    if (!towers.empty()) towers += ",";
    towers += std::to_string(d);
  }
  std::string out;
  out += "budget.enumeration=" + std::to_string(budget_enumeration) + "\n";
  out += "budget.eval=" + std::to_string(budget_eval) + "\n";
  out += "budget.formula=" + std::to_string(budget_formula_nodes) + "\n";
  out += "budget.subset=" + std::to_string(budget_subset) + "\n";
  out += "epsilon=" + epsilon.str() + "\n";
  out += "exclude_identity=" + std::string(exclude_identity ? "true" : "false") + "\n";
  out += "json=" + std::string(json_output ? "true" : "false") + "\n";
  out += "out=" + out_dir + "\n";
  out += "parallel=" + std::string(parallel ? "true" : "false") + "\n";
  out += "seed=" + std::to_string(seed) + "\n";
  out += "tower=" + towers + "\n";
  return out;
}

std::uint64_t RunConfig::hash() const { return fnv1a(canonical()); }

std::string cache_key(const std::string& command, const std::string& canonical_inputs,
                      const RunConfig& config) {
  std::string material = command;
  material.push_back('\0');
  material += canonical_inputs;
  material.push_back('\0');
  material += config.canonical();
  return hex64(fnv1a(material));
}

std::optional<std::string> cache_lookup(const std::string& out_dir, const std::string& key) {
  fs::path p = fs::path(out_dir) / "cache" / (key + ".json");
  std::ifstream in(p);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void cache_store(const std::string& out_dir, const std::string& key,
                 const std::string& record_json) {
  fs::path dir = fs::path(out_dir) / "cache";
  fs::create_directories(dir);
  fs::path tmp = dir / (key + ".json.tmp");
  fs::path final_path = dir / (key + ".json");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(Errc::BadInput, "cannot write " + tmp.string());
    out << record_json;
  }
  fs::rename(tmp, final_path);
}

std::vector<std::string> cache_list(const std::string& out_dir) {
  std::vector<std::string> keys;
  fs::path dir = fs::path(out_dir) / "cache";
  if (!fs::exists(dir)) return keys;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.size() == 21 && name.substr(16) == ".json") keys.push_back(name.substr(0, 16));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::size_t cache_clear(const std::string& out_dir) {
  fs::path dir = fs::path(out_dir) / "cache";
  if (!fs::exists(dir)) return 0;
  std::size_t removed = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.size() == 21 && name.substr(16) == ".json") {
      fs::remove(entry.path());
      ++removed;
    }
  }
  return removed;
}

}  // namespace sl2lab
