#include "levinlab/witness.hpp"

#include <cctype>
#include <limits>

namespace levin {

std::optional<Nat> Witness::nat(std::size_t i) const {
  if (i >= parts.size()) return std::nullopt;
  const Int& v = parts[i];
  if (v < 0 || v > Int(std::numeric_limits<Nat>::max())) return std::nullopt;
  return static_cast<Nat>(v);
}

Int Witness::magnitude() const {
  Int m = 0;
  for (const auto& p : parts) {
    Int a = p < 0 ? Int(-p) : p;
    if (a > m) m = a;
  }
  return m;
}

Witness Witness::slice(std::size_t from, std::size_t count) const {
  Witness w;
  for (std::size_t i = from; i < from + count && i < parts.size(); ++i) w.parts.push_back(parts[i]);
  return w;
}

Witness Witness::concat(const Witness& other) const {
  Witness w = *this;
  w.parts.insert(w.parts.end(), other.parts.begin(), other.parts.end());
  return w;
}

std::strong_ordering operator<=>(const Witness& a, const Witness& b) {
  if (a.parts.size() != b.parts.size()) return a.parts.size() <=> b.parts.size();
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    if (a.parts[i] < b.parts[i]) return std::strong_ordering::less;
    if (b.parts[i] < a.parts[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const Witness& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.parts.size(); ++i) {
    if (i) out += ",";
    out += w.parts[i].str();
  }
  return out + "]";
}

std::optional<Witness> parse_witness(std::string_view text) {
  std::string body;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) body.push_back(c);
  }
  if (!body.empty() && (body.front() == '[' || body.front() == '(')) {
    char close = body.front() == '[' ? ']' : ')';
    if (body.back() != close) return std::nullopt;
    body = body.substr(1, body.size() - 2);
  }
  Witness w;
  if (body.empty()) return w;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty()) return std::nullopt;
    std::size_t digits = item[0] == '-' ? 1 : 0;
    if (digits == item.size()) return std::nullopt;
    for (std::size_t i = digits; i < item.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(item[i]))) return std::nullopt;
    }
    w.parts.emplace_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return w;
}

}  // namespace levin
