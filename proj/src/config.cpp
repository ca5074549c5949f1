#include "qhj/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qhj/errors.hpp"

namespace qhj {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

double parse_number(const std::string& tok, int line_no) {
  try {
    size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config line " + std::to_string(line_no) +
                      ": expected a number, got '" + tok + "'");
  }
}

// parses "[...]" which may nest one level
ConfigValue parse_array(const std::string& body, int line_no) {
  ConfigValue v;
  const std::string inner = trim(body.substr(1, body.size() - 2));
  if (!inner.empty() && inner.front() == '[') {
    v.kind = ConfigValue::Kind::array2;
    size_t pos = 0;
    while (pos < inner.size()) {
      const size_t open = inner.find('[', pos);
      if (open == std::string::npos) break;
      const size_t close = inner.find(']', open);
      if (close == std::string::npos)
        throw ConfigError("config line " + std::to_string(line_no) + ": unbalanced '['");
      const ConfigValue row =
          parse_array(inner.substr(open, close - open + 1), line_no);
      v.array2.push_back(row.array);
      pos = close + 1;
    }
    return v;
  }
  v.kind = ConfigValue::Kind::array;
  std::stringstream ss(inner);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) v.array.push_back(parse_number(tok, line_no));
  }
  return v;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");

    ConfigValue v;
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"')
        throw ConfigError("config line " + std::to_string(line_no) + ": unterminated string");
      v.kind = ConfigValue::Kind::string;
      v.str = value.substr(1, value.size() - 2);
    } else if (value == "true" || value == "false") {
      v.kind = ConfigValue::Kind::boolean;
      v.boolean = value == "true";
    } else if (value.front() == '[') {
      if (value.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) + ": unbalanced array");
      v = parse_array(value, line_no);
    } else {
      v.kind = ConfigValue::Kind::number;
      v.number = parse_number(value, line_no);
    }
    cfg.sections_[section][key] = v;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const ConfigValue& Config::get(const std::string& section, const std::string& key) const {
  const auto sec = sections_.find(section);
  if (sec == sections_.end())
    throw ConfigError("missing config section [" + section + "]");
  const auto it = sec->second.find(key);
  if (it == sec->second.end())
    throw ConfigError("missing config key '" + key + "' in [" + section + "]");
  return it->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto sec = sections_.find(section);
  return sec != sections_.end() && sec->second.count(key) > 0;
}

double Config::number(const std::string& section, const std::string& key) const {
  const ConfigValue& v = get(section, key);
  if (v.kind != ConfigValue::Kind::number)
    throw ConfigError("config key '" + key + "' is not a number");
  return v.number;
}

double Config::number_or(const std::string& section, const std::string& key,
                         double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

std::string Config::string(const std::string& section, const std::string& key) const {
  const ConfigValue& v = get(section, key);
  if (v.kind != ConfigValue::Kind::string)
    throw ConfigError("config key '" + key + "' is not a string");
  return v.str;
}

std::string Config::string_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
  return has(section, key) ? string(section, key) : fallback;
}

bool Config::boolean_or(const std::string& section, const std::string& key,
                        bool fallback) const {
  if (!has(section, key)) return fallback;
  const ConfigValue& v = get(section, key);
  if (v.kind != ConfigValue::Kind::boolean)
    throw ConfigError("config key '" + key + "' is not a boolean");
  return v.boolean;
}

std::vector<double> Config::array(const std::string& section,
                                  const std::string& key) const {
  const ConfigValue& v = get(section, key);
  if (v.kind != ConfigValue::Kind::array)
    throw ConfigError("config key '" + key + "' is not an array");
  return v.array;
}

std::vector<std::vector<double>> Config::array2(const std::string& section,
                                                const std::string& key) const {
  const ConfigValue& v = get(section, key);
  if (v.kind != ConfigValue::Kind::array2)
    throw ConfigError("config key '" + key + "' is not a nested array");
  return v.array2;
}

}  // namespace qhj
