#include "handlepsc/keyvalue.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "handlepsc/errors.hpp"

namespace handlepsc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

KeyValues KeyValues::parse(std::string_view text) {
  KeyValues kv;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected `key = value`");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!kv.entries_.emplace(key, value).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key `" + key + "`");
    }
  }
  return kv;
}

KeyValues KeyValues::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open parameter file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::optional<std::string> KeyValues::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> KeyValues::get_double(const std::string& key) const {
  const auto text = get_string(key);
  if (!text) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(text->c_str(), &end);
  if (end == text->c_str() || *end != '\0') {
    throw ParseError("key `" + key + "`: `" + *text + "` is not a number");
  }
  return v;
}

std::optional<int> KeyValues::get_int(const std::string& key) const {
  const auto text = get_string(key);
  if (!text) return std::nullopt;
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), v);
  if (ec != std::errc{} || ptr != text->data() + text->size()) {
    throw ParseError("key `" + key + "`: `" + *text + "` is not an integer");
  }
  return v;
}

void KeyValues::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

void KeyValues::set(const std::string& key, double value) {
  entries_[key] = format_double(value);
}

void KeyValues::set(const std::string& key, int value) {
  entries_[key] = std::to_string(value);
}

std::vector<std::string> KeyValues::unknown_keys(
    const std::vector<std::string_view>& allowed) const {
  std::vector<std::string> out;
  for (const auto& [key, value] : entries_) {
    bool known = false;
    for (const auto a : allowed) known = known || key == a;
    if (!known) out.push_back(key);
  }
  return out;
}

std::string KeyValues::to_text() const {
  std::string out;
  for (const auto& [key, value] : entries_) out += key + " = " + value + "\n";
  return out;
}

}  // namespace handlepsc
