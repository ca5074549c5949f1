#pragma once

// Minimal sectioned key-value config format:
//   [section]
//   key = 3.14            # numbers
//   name = "harmonic"     # strings
//   flag = true           # booleans
//   xs = [1, 2, 3]        # number arrays
//   comps = [[0.8, 1.0], [0.2, 2.0]]  # nested number arrays

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qhj {

struct ConfigValue {
  enum class Kind { number, string, boolean, array, array2 } kind = Kind::number;
  double number = 0.0;
  std::string str;
  bool boolean = false;
  std::vector<double> array;
  std::vector<std::vector<double>> array2;
};

class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key,
                   double fallback) const;
  std::string string(const std::string& section, const std::string& key) const;
  std::string string_or(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
  bool boolean_or(const std::string& section, const std::string& key,
                  bool fallback) const;
  std::vector<double> array(const std::string& section, const std::string& key) const;
  std::vector<std::vector<double>> array2(const std::string& section,
                                          const std::string& key) const;

  const std::map<std::string, std::map<std::string, ConfigValue>>& sections() const {
    return sections_;
  }

 private:
  const ConfigValue& get(const std::string& section, const std::string& key) const;
  std::map<std::string, std::map<std::string, ConfigValue>> sections_;
};

}  // namespace qhj
