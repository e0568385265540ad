#include <cmath>
#include <cstdlib>
#include <limits>

#include "ouembed/errors.hpp"
#include "ouembed/space_spec.hpp"

namespace ouembed {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  bool done() const { return pos_ == text_.size(); }
  std::size_t pos() const { return pos_; }

  bool accept(const std::string& token) {
    if (text_.compare(pos_, token.size(), token) == 0) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& token) {
    if (!accept(token)) fail("'" + token + "'");
  }

  double number() {
    if (accept("inf")) return std::numeric_limits<double>::infinity();
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(x)) fail("number or 'inf'");
    pos_ += static_cast<std::size_t>(end - begin);
    return x;
  }

  void finish() {
    if (!done()) fail("end of input");
  }

  [[noreturn]] void fail(const std::string& expected) const { throw ParseError(text_, pos_, expected); }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

PowerLog power_log(Cursor& c) {
  PowerLog p;
  if (c.accept("1")) return p;
  bool any = false;
  do {
    if (c.accept("s^")) {
      p.r = c.number();
    } else if (c.accept("ll^")) {
      p.b = c.number();
    } else if (c.accept("l^")) {
      p.a = c.number();
    } else {
      c.fail(any ? "'s^', 'l^' or 'll^'" : "'1', 's^', 'l^' or 'll^'");
    }
    any = true;
  } while (c.accept("*"));
  return p;
}

SpaceSpec orlicz(Cursor& c) {
  if (c.accept("expexp^")) return make_orlicz(young::expexp_power(c.number()));
  if (c.accept("exp^")) return make_orlicz(young::exp_power(c.number()));
  if (c.accept("power:")) {
    const double p = c.number();
    c.expect(",");
    const double alpha = c.number();
    if (!(p >= 1.0)) c.fail("power exponent >= 1");
    return make_orlicz(young::power(p, alpha));
  }
  if (c.accept("loglog:")) return make_orlicz(young::loglog(c.number()));
  if (c.accept("Linf")) return make_orlicz(young::linf());
  c.fail("'exp^', 'expexp^', 'power:', 'loglog:' or 'Linf'");
}

}  // namespace

PowerLog parse_power_log(const std::string& text) {
  Cursor c(text);
  PowerLog p = power_log(c);
  c.finish();
  return p;
}

SpaceSpec parse_space_spec(const std::string& text) {
  Cursor c(text);
  SpaceSpec out{Lebesgue{1.0}};
  if (c.accept("Lp:")) {
    const double p = c.number();
    if (!(p >= 1.0)) c.fail("exponent >= 1");
    out = make_lebesgue(p);
  } else if (c.accept("LZ:")) {
    double v[4];
    for (int k = 0; k < 4; ++k) {
      if (k > 0) c.expect(",");
      v[k] = c.number();
    }
    LzVariant variant = LzVariant::star;
    if (c.accept(":")) {
      c.expect("max");
      variant = LzVariant::maximal;
    }
    c.finish();
    return make_lz(v[0], v[1], v[2], v[3], variant);
  } else if (c.accept("Orlicz:")) {
    out = orlicz(c);
  } else if (c.accept("Lambda:")) {
    out = make_lambda(Quasiconcave::preset(power_log(c)));
  } else if (c.accept("M:")) {
    out = make_marcinkiewicz(Quasiconcave::preset(power_log(c)));
  } else if (c.accept("weak:")) {
    out = make_weak(Quasiconcave::preset(power_log(c)));
  } else {
    c.fail("'Lp:', 'LZ:', 'Orlicz:', 'Lambda:', 'M:' or 'weak:'");
  }
  c.finish();
  return out;
}

}  // namespace ouembed
