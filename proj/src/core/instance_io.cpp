#include "cbp/instance_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cbp {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (unsigned char ch : s) {
    if (!std::isdigit(ch)) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string bad = "not a non-negative rational: '" + std::string(text) + "'";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument(bad);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument(bad);
    Rational r(mpz_class(std::string(num), 10), d);
    r.canonicalize();
    return r;
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(text)) throw std::invalid_argument(bad);
    return Rational(mpz_class(std::string(text), 10));
  }
  auto whole = text.substr(0, dot);
  auto frac = text.substr(dot + 1);
  if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
      (!frac.empty() && !all_digits(frac))) {
    throw std::invalid_argument(bad);
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
  Rational r(digits, scale);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) { return value.get_str(); }

Instance parse_instance(std::string_view text) {
  Instance instance;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    std::istringstream fields{std::string(line)};
    std::string color, size, extra;
    if (!(fields >> color >> size) || (fields >> extra)) {
      throw ParseError(line_no, "expected '<color> <size>', got '" + std::string(line) + "'");
    }
    Rational value;
    try {
      value = parse_rational(size);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    if (value > 1) throw ParseError(line_no, "size " + value.get_str() + " outside [0,1]");
    instance.add(Color(color), Size(value));
  }
  return instance;
}

std::string serialize_instance(const Instance& instance) {
  std::string out;
  for (const auto& item : instance.items()) {
    out += item.color.token();
    out += ' ';
    out += format_rational(item.size.value());
    out += '\n';
  }
  return out;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

void write_instance_file(const std::string& path, const Instance& instance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_instance(instance);
}

}  // namespace cbp
