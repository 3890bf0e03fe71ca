#pragma once

// Flat `key = value` configuration with `[section]` headers. Keys are
// addressed as "section.key". Only known keys are accepted.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace convtag::config {

class Config {
 public:
  // Starts with every known key at its default.
  Config();

  // Relative paths in the file resolve against the file's directory.
  static Config load(const std::filesystem::path& path);
  static Config parse(std::istream& in, const std::string& source = "<config>",
                      const std::filesystem::path& base_dir = {});

  // Throws Error(Schema) for unknown keys.
  void set(const std::string& key, const std::string& value);
  const std::string& get(const std::string& key) const;

  std::string get_string(const std::string& key) const { return get(key); }
  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<std::string> get_list(const std::string& key) const;  // comma-separated
  // Empty stays empty; relative values are joined onto base_dir().
  std::filesystem::path get_path(const std::string& key) const;

  const std::filesystem::path& base_dir() const noexcept { return base_dir_; }
  void set_base_dir(std::filesystem::path dir) { base_dir_ = std::move(dir); }

  static const std::vector<std::string>& known_keys();
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  // Sections in sorted order, as the file format.
  void write(std::ostream& out) const;

 private:
  std::map<std::string, std::string> values_;
  std::filesystem::path base_dir_;
};

}  // namespace convtag::config
