#include "lambdak/cdga.hpp"

#include <map>
#include <set>
#include <sstream>

namespace lambdak {

Form::Form(CdgaPtr algebra, std::vector<Rational> coeffs) : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (!algebra_) throw Error("form without algebra");
  if (coeffs_.size() != algebra_->dim()) throw Error("form dimension does not match its algebra");
  for (auto& c : coeffs_) c.canonicalize();
}

void Form::check_same(const Form& o) const {
  if (algebra_ != o.algebra_) throw Error("mismatched algebras");
}

bool Form::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

Form Form::degree_part(int p) const {
  Form out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (algebra_->basis_degree(i) != p) out.coeffs_[i] = 0;
  }
  return out;
}

Form Form::even_part() const {
  Form out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (algebra_->basis_degree(i) % 2 != 0) out.coeffs_[i] = 0;
  }
  return out;
}

Form Form::odd_part() const { return *this - even_part(); }

int Form::lowest_degree() const {
  int best = -1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    int deg = algebra_->basis_degree(i);
    if (best < 0 || deg < best) best = deg;
  }
  return best;
}

Form Form::d() const { return Form(algebra_, algebra_->apply_d(coeffs_)); }

Form Form::operator-() const {
  Form out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Form& Form::operator+=(const Form& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Form& Form::operator-=(const Form& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Form operator*(const Form& a, const Form& b) {
  a.check_same(b);
  return Form(a.algebra_, a.algebra_->multiply(a.coeffs_, b.coeffs_));
}

Form operator*(const Rational& s, Form a) {
  for (auto& c : a.coeffs_) c *= s;
  return a;
}

bool operator==(const Form& a, const Form& b) { return a.algebra_ == b.algebra_ && a.coeffs_ == b.coeffs_; }

std::string Form::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    const std::string& name = algebra_->basis_name(i);
    if (c < 0) out << "-";
    else if (!first) out << "+";
    Rational mag = abs(c);
    if (name == "1") out << mag.get_str();
    else {
      if (mag != 1) out << mag.get_str() << "*";
      out << name;
    }
    first = false;
  }
  return first ? "0" : out.str();
}

// ---------------------------------------------------------------------------

CdgaPtr Cdga::build(std::vector<Generator> generators, Relations relations, int top_degree,
                    const std::vector<DifferentialTerm>& differential) {
  if (generators.empty()) throw InputError("algebra needs at least one generator");
  std::set<std::string> names;
  int degree_sum = 0;
  for (const auto& g : generators) {
    if (g.degree < 1) throw InputError("generator '" + g.name + "' must have positive degree");
    if (g.name.empty() || g.name == "1" || g.name.find_first_of("*^ ") != std::string::npos)
      throw InputError("invalid generator name '" + g.name + "'");
    if (!names.insert(g.name).second) throw InputError("duplicate generator '" + g.name + "'");
    degree_sum += g.degree;
  }
  if (top_degree < 0) {
    if (relations != Relations::Exterior) throw InputError("truncated-polynomial algebra needs top_degree");
    top_degree = degree_sum;
  }
  std::shared_ptr<Cdga> alg(new Cdga());
  alg->generators_ = std::move(generators);
  alg->relations_ = relations;
  alg->top_degree_ = top_degree;
  alg->init_basis();
  alg->init_products();
  alg->init_differential(differential);
  alg->validate();
  alg->init_exact_image();
  return alg;
}

CdgaPtr Cdga::from_json(const nlohmann::json& spec) {
  try {
    std::vector<Generator> gens;
    for (const auto& g : spec.at("generators")) gens.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>()});
    std::string rel = spec.value("relations", std::string("exterior"));
    Relations relations;
    if (rel == "exterior") relations = Relations::Exterior;
    else if (rel == "truncated-polynomial") relations = Relations::TruncatedPolynomial;
    else throw InputError("unknown relations '" + rel + "'");
    std::vector<DifferentialTerm> terms;
    if (spec.contains("d")) {
      for (const auto& t : spec.at("d")) {
        Rational coeff = 1;
        if (t.contains("coeff")) {
          const auto& c = t.at("coeff");
          coeff = c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>());
        }
        terms.push_back({t.at("from").get<std::string>(), t.at("to").get<std::string>(), coeff});
      }
    }
    int top = spec.value("top_degree", -1);
    return build(std::move(gens), relations, top, terms);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad algebra description: ") + e.what());
  }
}

CdgaPtr Cdga::torus() { return build({{"e1", 1}, {"e2", 1}}, Relations::Exterior, -1, {}); }

CdgaPtr Cdga::exact_pair(int top_degree) {
  return build({{"x", 1}, {"y", 2}}, Relations::TruncatedPolynomial, top_degree, {{"x", "y", 1}});
}

void Cdga::init_basis() {
  const std::size_t n = generators_.size();
  std::vector<std::vector<int>> found;
  std::vector<int> exps(n, 0);
  // Depth-first enumeration of admissible exponent vectors.
  auto rec = [&](auto&& self, std::size_t i, int deg) -> void {
    if (i == n) {
      found.push_back(exps);
      return;
    }
    int d = generators_[i].degree;
    int max_exp = (d % 2 == 1 || relations_ == Relations::Exterior) ? 1 : top_degree_;
    for (int e = 0; e <= max_exp && deg + e * d <= top_degree_; ++e) {
      exps[i] = e;
      self(self, i + 1, deg + e * d);
    }
    exps[i] = 0;
  };
  rec(rec, 0, 0);
  if (found.size() > 4096) throw InputError("algebra too large");
  auto degree_of = [&](const std::vector<int>& e) {
    int s = 0;
    for (std::size_t i = 0; i < n; ++i) s += e[i] * generators_[i].degree;
    return s;
  };
  std::stable_sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    int da = degree_of(a), db = degree_of(b);
    if (da != db) return da < db;
    return a > b;
  });
  basis_ = std::move(found);
  for (const auto& e : basis_) {
    degrees_.push_back(degree_of(e));
    std::string name;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      if (!name.empty()) name += "*";
      name += generators_[i].name;
      if (e[i] > 1) name += "^" + std::to_string(e[i]);
    }
    names_.push_back(name.empty() ? "1" : name);
  }
}

void Cdga::init_products() {
  const std::size_t n = generators_.size();
  std::map<std::vector<int>, long> index;
  for (std::size_t i = 0; i < basis_.size(); ++i) index[basis_[i]] = static_cast<long>(i);
  products_.assign(basis_.size(), std::vector<Product>(basis_.size(), Product{-1, 0}));
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      std::vector<int> sum(n);
      for (std::size_t i = 0; i < n; ++i) sum[i] = basis_[a][i] + basis_[b][i];
      auto it = index.find(sum);
      if (it == index.end()) continue;
      // Odd generators of b move left past the odd generators of a with larger index.
      int swaps = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (basis_[b][j] == 0 || generators_[j].degree % 2 == 0) continue;
        for (std::size_t i = j + 1; i < n; ++i) {
          if (basis_[a][i] != 0 && generators_[i].degree % 2 == 1) ++swaps;
        }
      }
      products_[a][b] = Product{it->second, swaps % 2 == 0 ? 1 : -1};
    }
  }
}

std::vector<Rational> Cdga::multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  std::vector<Rational> out(basis_.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      const Product& p = products_[i][j];
      if (p.index < 0) continue;
      if (p.sign > 0) out[p.index] += a[i] * b[j];
      else out[p.index] -= a[i] * b[j];
    }
  }
  return out;
}

std::vector<Rational> Cdga::apply_d(const std::vector<Rational>& a) const {
  std::vector<Rational> out(basis_.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += a[i] * d_basis_[i][j];
  }
  return out;
}

Form Cdga::zero() const { return Form(shared_from_this(), std::vector<Rational>(dim(), Rational(0))); }

Form Cdga::scalar(const Rational& c) const {
  std::vector<Rational> v(dim(), Rational(0));
  v[0] = c;
  return Form(shared_from_this(), std::move(v));
}

Form Cdga::unit() const { return scalar(1); }

Form Cdga::basis_element(std::size_t i) const {
  if (i >= dim()) throw Error("basis index out of range");
  std::vector<Rational> v(dim(), Rational(0));
  v[i] = 1;
  return Form(shared_from_this(), std::move(v));
}

Form Cdga::monomial(const std::string& text) const {
  std::vector<Rational> acc(dim(), Rational(0));
  acc[0] = 1;
  if (text == "1") return Form(shared_from_this(), acc);
  std::stringstream in(text);
  std::string factor;
  while (std::getline(in, factor, '*')) {
    long power = 1;
    auto caret = factor.find('^');
    std::string name = factor.substr(0, caret);
    if (caret != std::string::npos) {
      try {
        power = std::stol(factor.substr(caret + 1));
      } catch (const std::logic_error&) {
        throw InputError("bad exponent in '" + text + "'");
      }
      if (power < 0) throw InputError("negative exponent in '" + text + "'");
    }
    std::size_t g = generators_.size();
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (generators_[i].name == name) g = i;
    }
    if (g == generators_.size()) throw InputError("unknown generator '" + name + "'");
    std::vector<int> e(generators_.size(), 0);
    e[g] = 1;
    std::size_t idx = 0;
    while (idx < basis_.size() && basis_[idx] != e) ++idx;
    if (idx == basis_.size()) {
      // Generator itself above the top degree.
      return zero();
    }
    std::vector<Rational> gen(dim(), Rational(0));
    gen[idx] = 1;
    for (long p = 0; p < power; ++p) acc = multiply(acc, gen);
  }
  return Form(shared_from_this(), std::move(acc));
}

void Cdga::init_differential(const std::vector<DifferentialTerm>& terms) {
  const std::size_t n = generators_.size();
  std::vector<std::vector<Rational>> d_gen(n, std::vector<Rational>(dim(), Rational(0)));
  for (const auto& t : terms) {
    std::size_t g = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (generators_[i].name == t.from) g = i;
    }
    if (g == n) throw InputError("differential of unknown generator '" + t.from + "'");
    Form target = monomial(t.to);
    int target_degree = target.lowest_degree();
    if (target_degree >= 0 && target_degree != generators_[g].degree + 1)
      throw InputError("d(" + t.from + ") must have degree " + std::to_string(generators_[g].degree + 1));
    for (std::size_t j = 0; j < dim(); ++j) d_gen[g][j] += t.coeff * target[j];
  }
  d_basis_.assign(dim(), std::vector<Rational>(dim(), Rational(0)));
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < basis_.size(); ++i) index[basis_[i]] = i;
  // Basis is sorted by degree, so the tail m' of m = x_g m' is already done.
  for (std::size_t m = 1; m < basis_.size(); ++m) {
    std::size_t g = 0;
    while (basis_[m][g] == 0) ++g;
    std::vector<int> rest = basis_[m];
    --rest[g];
    std::size_t r = index.at(rest);
    std::vector<int> single(n, 0);
    single[g] = 1;
    std::vector<Rational> x(dim(), Rational(0)), tail(dim(), Rational(0));
    x[index.at(single)] = 1;
    tail[r] = 1;
    auto first = multiply(d_gen[g], tail);
    auto second = multiply(x, d_basis_[r]);
    Rational s = generators_[g].degree % 2 == 0 ? 1 : -1;
    for (std::size_t j = 0; j < dim(); ++j) d_basis_[m][j] = first[j] + s * second[j];
  }
}

void Cdga::validate() const {
  for (std::size_t a = 0; a < dim(); ++a) {
    if (auto dd = apply_d(d_basis_[a]); std::any_of(dd.begin(), dd.end(), [](const Rational& c) { return c != 0; }))
      throw InputError("d^2 != 0 on " + names_[a]);
  }
  for (std::size_t a = 0; a < dim(); ++a) {
    std::vector<Rational> ea(dim(), Rational(0));
    ea[a] = 1;
    for (std::size_t b = 0; b < dim(); ++b) {
      std::vector<Rational> eb(dim(), Rational(0));
      eb[b] = 1;
      auto lhs = apply_d(multiply(ea, eb));
      auto t1 = multiply(d_basis_[a], eb);
      auto t2 = multiply(ea, d_basis_[b]);
      Rational s = degrees_[a] % 2 == 0 ? 1 : -1;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (lhs[j] != t1[j] + s * t2[j]) throw InputError("Leibniz rule fails on " + names_[a] + ", " + names_[b]);
      }
    }
  }
}

void Cdga::init_exact_image() {
  std::vector<std::vector<Rational>> rows = d_basis_;
  const std::size_t cols = dim();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pick = rank;
    while (pick < rows.size() && rows[pick][col] == 0) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[rank], rows[pick]);
    Rational inv = 1 / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (std::size_t c = 0; c < cols; ++c) rows[r][c] -= f * rows[rank][c];
    }
    exact_pivots_.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  exact_rref_ = std::move(rows);
}

Form Cdga::reduce_mod_exact(const Form& f) const {
  if (f.algebra().get() != this) throw Error("mismatched algebras");
  std::vector<Rational> v = f.coeffs();
  for (std::size_t r = 0; r < exact_rref_.size(); ++r) {
    Rational c = v[exact_pivots_[r]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * exact_rref_[r][j];
  }
  return Form(f.algebra(), std::move(v));
}

}  // namespace lambdak
