#include "lforge/polynomial_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "lforge/errors.hpp"

namespace lforge {

namespace {

using Poly = std::map<Monomial, mpz_class>;

constexpr unsigned long kMaxExponent = 100000;

class Parser {
 public:
  Parser(const Presentation& p, std::string_view text, long cap) : p_(p), text_(text), cap_(cap) {}

  Poly parse() {
    skip();
    if (pos_ >= text_.size()) fail("empty polynomial");
    Poly result = expr();
    skip();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

  [[noreturn]] void fail_at(const std::string& message, std::size_t offset) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(message, line, col);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool starts_atom() {
    skip();
    if (pos_ >= text_.size()) return false;
    const unsigned char c = static_cast<unsigned char>(text_[pos_]);
    return std::isdigit(c) || std::isalpha(c) || c == '_' || c == '(';
  }

  void add_into(Poly& acc, const Poly& other, int sign) {
    for (const auto& [m, c] : other) {
      auto& slot = acc[m];
      if (sign > 0)
        slot += c;
      else
        slot -= c;
      if (slot == 0) acc.erase(m);
    }
  }

  Poly multiply(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        Monomial m = ma * mb;
        if (cap_ > 0 && p_.weight(m) >= cap_) continue;
        out[m] += ca * cb;
      }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

  Poly expr() {
    Poly acc;
    int sign = 1;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      sign = -1;
    }
    add_into(acc, term(), sign);
    while (true) {
      if (peek('+')) {
        ++pos_;
        add_into(acc, term(), 1);
      } else if (peek('-')) {
        ++pos_;
        add_into(acc, term(), -1);
      } else {
        break;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = multiply(acc, factor());
      } else if (starts_atom()) {
        acc = multiply(acc, factor());
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (!peek('^')) return base;
    ++pos_;
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent after '^'");
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) fail_at("exponent too large", start);
    unsigned long e = std::stoul(digits);
    Poly result;
    result[Monomial{}] = 1;
    Poly b = base;
    while (e) {
      if (e & 1u) result = multiply(result, b);
      e >>= 1;
      if (e) b = multiply(b, b);
    }
    return result;
  }

  Poly atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '-') {
      ++pos_;
      Poly inner = factor();
      for (auto& [m, v] : inner) v = -v;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Poly out;
      mpz_class v(std::string(text_.substr(start, pos_ - start)));
      if (v != 0) out[Monomial{}] = v;
      return out;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      Monomial m;
      if (auto g = p_.find_generator(name)) {
        m[*g] = 1;
      } else if (p_.ring().kind() == RingKind::KOEven && name == "xi") {
        m[p_.xi_slot()] = 1;
      } else if (p_.ring().kind() == RingKind::KOEven && name == "bR") {
        m[p_.br_slot()] = 1;
      } else {
        fail_at("unknown identifier '" + name + "'", start);
      }
      Poly out;
      if (cap_ <= 0 || p_.weight(m) < cap_) out[m] = 1;
      return out;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const Presentation& p_;
  std::string_view text_;
  long cap_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Presentation& p, const Monomial& m) {
  std::string out;
  auto emit = [&](std::size_t slot) {
    if (m[slot] == 0) return;
    if (!out.empty()) out += '*';
    out += p.slot_name(slot);
    if (m[slot] > 1) out += "^" + std::to_string(m[slot]);
  };
  for (std::size_t s = p.generator_count(); s < p.slot_count(); ++s) emit(s);
  for (std::size_t s = 0; s < p.generator_count(); ++s) emit(s);
  return out;
}

}  // namespace

std::vector<Term> parse_polynomial_terms(const Presentation& p, std::string_view text, long cap) {
  Poly poly = Parser(p, text, cap).parse();
  std::vector<Term> out;
  out.reserve(poly.size());
  for (auto& [m, c] : poly) out.push_back({m, std::move(c)});
  return out;
}

TruncatedSeries parse_series(const PresentationPtr& p, std::string_view text) {
  return TruncatedSeries::from_terms(p, parse_polynomial_terms(*p, text, p->truncation()));
}

std::string format_terms(const Presentation& p, const std::vector<Term>& terms) {
  std::vector<const Term*> order;
  for (const auto& t : terms)
    if (t.coeff != 0) order.push_back(&t);
  if (order.empty()) return "0";
  std::sort(order.begin(), order.end(), [&](const Term* a, const Term* b) {
    const long wa = p.weight(a->monomial), wb = p.weight(b->monomial);
    if (wa != wb) return wa > wb;
    return a->monomial > b->monomial;
  });
  std::string out;
  for (const Term* t : order) {
    mpz_class c = t->coeff;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const std::string mono = monomial_text(p, t->monomial);
    if (mono.empty()) {
      out += c.get_str();
    } else if (c == 1) {
      out += mono;
    } else {
      out += c.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace lforge
