#include "tkft/murec.hpp"

#include <cctype>
#include <map>

#include "tkft/error.hpp"

namespace tkft {

ExprPtr Expr::constant(Natural k, int arity) {
  if (arity < 0) throw ConstructionError("negative arity");
  if (k < 0) throw ConstructionError("constants are naturals");
  auto e = std::shared_ptr<Expr>(new Expr(Kind::Const, arity, 1));
  e->value_ = std::move(k);
  return e;
}

ExprPtr Expr::succ() { return std::shared_ptr<Expr>(new Expr(Kind::Succ, 1, 1)); }

ExprPtr Expr::proj(int i, int arity) {
  if (i < 1 || i > arity)
    throw ConstructionError("projection index " + std::to_string(i) + " out of 1.." +
                            std::to_string(arity));
  auto e = std::shared_ptr<Expr>(new Expr(Kind::Proj, arity, 1));
  e->index_ = i;
  return e;
}

ExprPtr Expr::tuple(std::vector<ExprPtr> components) {
  if (components.empty()) throw ConstructionError("tuple needs at least one component");
  const int n = components[0]->arity();
  int outputs = 0;
  for (const auto& c : components) {
    if (c->arity() != n) throw ConstructionError("tuple components take different arities");
    outputs += c->outputs();
  }
  auto e = std::shared_ptr<Expr>(new Expr(Kind::Tuple, n, outputs));
  e->children_ = std::move(components);
  return e;
}

ExprPtr Expr::compose(ExprPtr g, ExprPtr f) {
  if (g->arity() != f->outputs())
    throw ConstructionError("comp: outer function takes " + std::to_string(g->arity()) +
                            " inputs but inner one produces " + std::to_string(f->outputs()));
  auto e = std::shared_ptr<Expr>(new Expr(Kind::Compose, f->arity(), g->outputs()));
  e->children_ = {std::move(g), std::move(f)};
  return e;
}

ExprPtr Expr::primrec(ExprPtr f, ExprPtr g) {
  if (f->outputs() != 1 || g->outputs() != 1)
    throw ConstructionError("primrec parts must produce one value");
  if (g->arity() != f->arity() + 2)
    throw ConstructionError("primrec: step function must take " + std::to_string(f->arity() + 2) +
                            " inputs, not " + std::to_string(g->arity()));
  auto e = std::shared_ptr<Expr>(new Expr(Kind::PrimRec, f->arity() + 1, 1));
  e->children_ = {std::move(f), std::move(g)};
  return e;
}

ExprPtr Expr::mu(ExprPtr f) {
  if (f->outputs() != 1 || f->arity() < 1)
    throw ConstructionError("mu needs a function with one value and at least one input");
  auto e = std::shared_ptr<Expr>(new Expr(Kind::Mu, f->arity() - 1, 1));
  e->children_ = {std::move(f)};
  return e;
}

std::string format_expr(const ExprPtr& e) {
  const auto& c = e->children();
  switch (e->kind()) {
    case Expr::Kind::Const:
      return "const " + e->value().str() + "/" + std::to_string(e->arity());
    case Expr::Kind::Succ:
      return "succ";
    case Expr::Kind::Proj:
      return "proj " + std::to_string(e->index()) + "/" + std::to_string(e->arity());
    case Expr::Kind::Tuple: {
      std::string out = "tuple(";
      for (std::size_t i = 0; i < c.size(); ++i) out += (i ? ", " : "") + format_expr(c[i]);
      return out + ")";
    }
    case Expr::Kind::Compose:
      return "comp(" + format_expr(c[0]) + ", " + format_expr(c[1]) + ")";
    case Expr::Kind::PrimRec:
      return "primrec(" + format_expr(c[0]) + ", " + format_expr(c[1]) + ")";
    case Expr::Kind::Mu:
      return "mu(" + format_expr(c[0]) + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  ExprPtr program() {
    while (peek_word() == "let") {
      word();
      const std::string name = word();
      expect('=');
      if (names_.count(name)) fail("'" + name + "' defined twice");
      names_[name] = expr();
      expect(';');
    }
    ExprPtr e = expr();
    skip();
    if (pos_ < text_.size() && text_[pos_] == ';') ++pos_;
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing text");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) line += text_[i] == '\n';
    throw MalformedInput("line " + std::to_string(line) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string peek_word() {
    const auto save = pos_;
    skip();
    std::string w;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      w.push_back(text_[pos_++]);
    pos_ = save;
    return w;
  }

  std::string word() {
    skip();
    std::string w;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      w.push_back(text_[pos_++]);
    if (w.empty()) fail("expected a name or number");
    return w;
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Natural number() {
    const std::string w = word();
    for (char c : w)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a number, got '" + w + "'");
    return Natural(w);
  }

  int small_number() {
    const Natural n = number();
    if (n > 1000000) fail("number too large here");
    return n.convert_to<int>();
  }

  ExprPtr expr() {
    const std::string w = word();
    try {
      if (w == "succ") return Expr::succ();
      if (w == "const") {
        Natural k = number();
        expect('/');
        return Expr::constant(std::move(k), small_number());
      }
      if (w == "proj") {
        const int i = small_number();
        expect('/');
        return Expr::proj(i, small_number());
      }
      if (w == "tuple") {
        expect('(');
        std::vector<ExprPtr> parts{expr()};
        for (skip(); pos_ < text_.size() && text_[pos_] == ','; skip()) {
          ++pos_;
          parts.push_back(expr());
        }
        expect(')');
        return Expr::tuple(std::move(parts));
      }
      if (w == "comp" || w == "primrec") {
        expect('(');
        ExprPtr a = expr();
        expect(',');
        ExprPtr b = expr();
        expect(')');
        return w == "comp" ? Expr::compose(std::move(a), std::move(b))
                           : Expr::primrec(std::move(a), std::move(b));
      }
      if (w == "mu") {
        expect('(');
        ExprPtr a = expr();
        expect(')');
        return Expr::mu(std::move(a));
      }
    } catch (const ConstructionError& e) {
      fail(e.what());
    }
    auto it = names_.find(w);
    if (it == names_.end()) fail("unknown name '" + w + "'");
    return it->second;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::map<std::string, ExprPtr> names_;
};

struct OutOfFuelSignal {};

class Evaluator {
 public:
  explicit Evaluator(std::uint64_t fuel) : fuel_(fuel) {}

  std::vector<Natural> operator()(const Expr& e, std::span<const Natural> args) {
    burn();
    const auto& c = e.children();
    switch (e.kind()) {
      case Expr::Kind::Const:
        return {e.value()};
      case Expr::Kind::Succ:
        return {args[0] + 1};
      case Expr::Kind::Proj:
        return {args[static_cast<std::size_t>(e.index() - 1)]};
      case Expr::Kind::Tuple: {
        std::vector<Natural> out;
        for (const auto& part : c) {
          auto v = (*this)(*part, args);
          out.insert(out.end(), v.begin(), v.end());
        }
        return out;
      }
      case Expr::Kind::Compose: {
        const auto mid = (*this)(*c[1], args);
        return (*this)(*c[0], mid);
      }
      case Expr::Kind::PrimRec: {
        std::vector<Natural> inner(args.size() + 1);
        for (std::size_t k = 1; k < args.size(); ++k) inner[k + 1] = args[k];
        Natural acc = (*this)(*c[0], args.subspan(1))[0];
        for (Natural y = 0; y < args[0]; ++y) {
          burn();
          inner[0] = y;
          inner[1] = std::move(acc);
          acc = (*this)(*c[1], inner)[0];
        }
        return {acc};
      }
      case Expr::Kind::Mu: {
        std::vector<Natural> inner(args.size() + 1);
        for (std::size_t k = 0; k < args.size(); ++k) inner[k + 1] = args[k];
        for (Natural y = 0;; ++y) {
          burn();
          inner[0] = y;
          if ((*this)(*c[0], inner)[0] == 0) return {y};
        }
      }
    }
    return {};
  }

  std::uint64_t used() const { return used_; }

 private:
  void burn() {
    if (used_ == fuel_) throw OutOfFuelSignal{};
    ++used_;
  }

  std::uint64_t fuel_;
  std::uint64_t used_ = 0;
};

}  // namespace

ExprPtr parse_program(const std::string& text) { return Parser(text).program(); }

EvalResult eval(const ExprPtr& e, std::span<const Natural> args, std::uint64_t fuel) {
  if (args.size() != static_cast<std::size_t>(e->arity()))
    throw MalformedInput("expected " + std::to_string(e->arity()) + " arguments, got " +
                         std::to_string(args.size()));
  for (const auto& a : args)
    if (a < 0) throw MalformedInput("arguments are naturals");
  Evaluator ev(fuel);
  EvalResult result;
  try {
    result.values = ev(*e, args);
  } catch (const OutOfFuelSignal&) {
    result.outcome = EvalResult::Outcome::OutOfFuel;
  }
  result.fuel_used = ev.used();
  return result;
}

namespace {

std::vector<unsigned long> first_primes(std::size_t n) {
  std::vector<unsigned long> ps;
  for (unsigned long k = 2; ps.size() < n; ++k) {
    bool prime = true;
    for (auto p : ps) {
      if (p * p > k) break;
      if (k % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) ps.push_back(k);
  }
  return ps;
}

}  // namespace

Natural pair_encode(std::span<const Natural> xs) {
  const auto ps = first_primes(xs.size());
  Natural out = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0) throw MalformedInput("pairing takes naturals");
    if (xs[i] > 1000000) throw MalformedInput("exponent too large to encode");
    out *= boost::multiprecision::pow(Natural(ps[i]), xs[i].convert_to<unsigned>());
  }
  return out;
}

std::vector<Natural> pair_decode(const Natural& n, std::size_t arity) {
  if (n < 1) throw MalformedInput("code must be at least 1");
  const auto ps = first_primes(arity);
  std::vector<Natural> out(arity, 0);
  Natural rest = n;
  for (std::size_t i = 0; i < arity; ++i)
    while (rest % ps[i] == 0) rest /= ps[i], ++out[i];
  if (rest != 1)
    throw MalformedInput(n.str() + " has a prime factor beyond the first " +
                         std::to_string(arity) + " primes");
  return out;
}

std::size_t loop_nodes(const ExprPtr& e) {
  std::size_t n = (e->kind() == Expr::Kind::PrimRec || e->kind() == Expr::Kind::Mu) ? 1 : 0;
  for (const auto& c : e->children()) n += loop_nodes(c);
  return n;
}

int reads_of(const ExprPtr& e, int i) {
  auto sat = [](int v) { return v > 2 ? 2 : v; };
  const auto& c = e->children();
  switch (e->kind()) {
    case Expr::Kind::Const:
      return 0;
    case Expr::Kind::Succ:
      return i == 1;
    case Expr::Kind::Proj:
      return e->index() == i;
    case Expr::Kind::Tuple: {
      int n = 0;
      for (const auto& part : c) n = sat(n + reads_of(part, i));
      return n;
    }
    case Expr::Kind::Compose: {
      const auto& g = c[0];
      const auto& f = c[1];
      if (f->kind() == Expr::Kind::Tuple) {
        int n = 0, slot = 1;
        for (const auto& part : f->children()) {
          int via = 0;
          for (int k = 0; k < part->outputs(); ++k) via = sat(via + reads_of(g, slot + k));
          n = sat(n + via * reads_of(part, i));
          slot += part->outputs();
        }
        return n;
      }
      if (f->outputs() == 1) return sat(reads_of(g, 1) * reads_of(f, i));
      return reads_of(f, i) > 0 ? 2 : 0;
    }
    case Expr::Kind::PrimRec:
      if (i == 1) return 1;
      return sat(reads_of(c[0], i - 1) + (reads_of(c[1], i + 1) > 0 ? 2 : 0));
    case Expr::Kind::Mu:
      return reads_of(c[0], i + 1) > 0 ? 2 : 0;
  }
  return 2;
}

}  // namespace tkft
