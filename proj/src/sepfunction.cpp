#include "liemm/sepfunction.hpp"

#include <algorithm>

#include "liemm/instance_io.hpp"

namespace liemm {

namespace {

template <class S>
S lift(const GaussRational& z);
template <>
GaussRational lift(const GaussRational& z) { return z; }
template <>
EpsLaurent lift(const GaussRational& z) { return EpsLaurent(z); }
template <>
FloatComplex lift(const GaussRational& z) { return {z.re.to_double(), z.im.to_double()}; }

template <class S>
Mat<S> lift_mat(const Mat<GaussRational>& m) {
  return m.map([](const GaussRational& z) { return lift<S>(z); });
}

template <class S>
S conj_scalar(const S& x) {
  using liemm::conj;
  using std::conj;
  return S(conj(x));
}

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return;
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// r(z0) for the grid indicator at an exact scalar.
GaussRational grid_value(const UniPoly& p, const GaussRational& z0) {
  if (z0.is_zero()) return GaussRational(1);
  if (z0.is_real()) {
    Rational z = z0.re / p.delta;
    if (z.is_integer()) {
      mpz_class m = z.num();
      if (m > 0 && m <= p.K) return {};
      if (m > p.K) {
        mpz_class c = binomial(mpz_class(m - 1).get_ui(), static_cast<unsigned long>(p.K));
        return GaussRational(Rational(p.K % 2 ? mpz_class(-c) : c));
      }
      mpz_class am = -m;
      return GaussRational(Rational(binomial(mpz_class(am + p.K).get_ui(), static_cast<unsigned long>(p.K))));
    }
  }
  if (p.K > kGridExpandLimit) throw OffGridValue(z0.str());
  GaussRational acc(1);
  for (long k = 1; k <= p.K; ++k) acc *= GaussRational(1) - z0 / GaussRational(Rational(k) * p.delta);
  return acc;
}

EpsLaurent grid_series(const UniPoly& p, EpsLaurent w) {
  auto v = w.valuation();
  GaussRational w0 = w.coeff(0);
  // lowest exponent where w differs from its constant term
  std::optional<int> first;
  const auto& c = w.raw_coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    int e = w.lo() + static_cast<int>(k);
    if (e != 0 && !c[k].is_zero()) {
      first = e;
      break;
    }
  }
  if (!first) {
    // w = w0 + O(eps^(hi+1))
    EpsLaurent r(grid_value(p, w0));
    return w.is_exact() ? r : r.truncate(std::max(w.hi(), 0));
  }
  if (p.K > kGridExpandLimit) {
    if (v && *v < 0) throw InsufficientOrder("grid indicator of degree " + std::to_string(p.K) + " at a pole");
    if (*first > 0) return EpsLaurent(grid_value(p, w0)).truncate(*first - 1);
    throw InsufficientOrder("grid indicator argument not a series");
  }
  if (w.is_exact()) w = w.truncate(std::max(w.lo(), 0) + 32);
  EpsLaurent acc(1);
  for (long k = 1; k <= p.K; ++k) {
    GaussRational s = -GaussRational(Rational(k) * p.delta).inv();
    acc = acc * (EpsLaurent(1) + w.scaled(s));
  }
  return acc;
}

}  // namespace

long UniPoly::degree() const {
  switch (kind) {
    case Kind::Lagrange: return static_cast<long>(nodes.size()) - 1;
    case Kind::Dense: {
      for (std::size_t k = coeffs.size(); k-- > 0;)
        if (!coeffs[k].is_zero()) return static_cast<long>(k);
      return 0;
    }
    case Kind::Grid: return K;
  }
  return 0;
}

GaussRational UniPoly::eval(const GaussRational& z) const {
  switch (kind) {
    case Kind::Lagrange: {
      GaussRational num(1), den(1);
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j == point) continue;
        num *= z - nodes[j];
        den *= nodes[point] - nodes[j];
      }
      return num / den;
    }
    case Kind::Dense: {
      GaussRational acc;
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
      return acc;
    }
    case Kind::Grid: return grid_value(*this, z);
  }
  return {};
}

FloatComplex UniPoly::eval(FloatComplex z) const {
  switch (kind) {
    case Kind::Lagrange: {
      FloatComplex acc{1.0, 0.0};
      FloatComplex xp = lift<FloatComplex>(nodes[point]);
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j == point) continue;
        FloatComplex xj = lift<FloatComplex>(nodes[j]);
        acc *= (z - xj) / (xp - xj);
      }
      return acc;
    }
    case Kind::Dense: {
      FloatComplex acc{};
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + lift<FloatComplex>(coeffs[k]);
      return acc;
    }
    case Kind::Grid: {
      if (K > 100000000L) throw std::domain_error("grid indicator too large for float evaluation");
      FloatComplex acc{1.0, 0.0};
      double d = delta.to_double();
      for (long k = 1; k <= K; ++k) acc *= 1.0 - z / (static_cast<double>(k) * d);
      return acc;
    }
  }
  return {};
}

EpsLaurent UniPoly::eval(const EpsLaurent& z) const {
  switch (kind) {
    case Kind::Lagrange: {
      EpsLaurent acc(1);
      GaussRational den(1);
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j == point) continue;
        acc = acc * (z - EpsLaurent(nodes[j]));
        den *= nodes[point] - nodes[j];
      }
      return acc.scaled(den.inv());
    }
    case Kind::Dense: {
      EpsLaurent acc;
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + EpsLaurent(coeffs[k]);
      return acc;
    }
    case Kind::Grid: return grid_series(*this, z);
  }
  return {};
}

nlohmann::json UniPoly::to_json() const {
  nlohmann::json j;
  switch (kind) {
    case Kind::Lagrange: {
      j["kind"] = "lagrange";
      j["point"] = scalar_json(nodes[point]);
      nlohmann::json ns = nlohmann::json::array();
      for (const auto& x : nodes) ns.push_back(scalar_json(x));
      j["nodes"] = ns;
      break;
    }
    case Kind::Dense: {
      j["kind"] = "dense";
      nlohmann::json cs = nlohmann::json::array();
      for (const auto& x : coeffs) cs.push_back(scalar_json(x));
      j["coeffs"] = cs;
      break;
    }
    case Kind::Grid:
      j["kind"] = "grid";
      j["delta"] = delta.str();
      j["K"] = K;
      break;
  }
  j["degree"] = degree();
  return j;
}

UniPoly lagrange_indicator(const GaussRational& point, const std::vector<GaussRational>& points) {
  UniPoly p;
  p.kind = UniPoly::Kind::Lagrange;
  bool found = false;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b)
      if (points[a] == points[b]) throw std::invalid_argument("duplicate interpolation node " + points[a].str());
    if (points[a] == point) {
      p.point = a;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("indicator point " + point.str() + " not among the nodes");
  p.nodes = points;
  return p;
}

UniPoly grid_indicator(const Rational& delta, long K) {
  if (delta.sign() <= 0) throw std::invalid_argument("grid quantum must be positive");
  if (K < 0) throw std::invalid_argument("grid size must be nonnegative");
  if (K > kGridMaxK) throw std::overflow_error("grid size " + std::to_string(K) + " exceeds the guard");
  UniPoly p;
  p.kind = UniPoly::Kind::Grid;
  p.delta = delta;
  p.K = K;
  return p;
}

UniPoly dense_poly(std::vector<GaussRational> coeffs) {
  UniPoly p;
  p.kind = UniPoly::Kind::Dense;
  p.coeffs = std::move(coeffs);
  return p;
}

template <class T>
Mat<T> conj_via_minors(const Mat<T>& M, const Mat<GaussRational>& Q) {
  std::size_t n = M.rows();
  Mat<T> QMQ = lift_mat<T>(Q) * M * lift_mat<T>(Q);
  Mat<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T m = det(drop_row_col(QMQ, i, j));
      out(i, j) = (i + j) % 2 ? T(-m) : m;
    }
  return out;
}

template Mat<EpsLaurent> conj_via_minors(const Mat<EpsLaurent>&, const Mat<GaussRational>&);
template Mat<FloatComplex> conj_via_minors(const Mat<FloatComplex>&, const Mat<GaussRational>&);
template Mat<GaussRational> conj_via_minors(const Mat<GaussRational>&, const Mat<GaussRational>&);

namespace {

std::shared_ptr<SepNode> node(SepNode::Kind k) {
  auto p = std::make_shared<SepNode>();
  p->kind = k;
  return p;
}

void need(const SepFn& f) {
  if (!f) throw std::invalid_argument("null separating function");
}

template <class S>
S divide_eps(const S& v, int k) {
  if constexpr (std::is_same_v<S, EpsLaurent>) {
    return v.shift(-k);
  } else {
    if (k == 0) return v;
    throw std::domain_error("eps division needs series evaluation");
  }
}

template <class S>
S eval_node(const SepNode& f, const Mat<S>& M, int t, double snap = 0) {
  using K = SepNode::Kind;
  switch (f.kind) {
    case K::Const: return lift<S>(f.a);
    case K::Entry:
      if (f.i >= M.rows() || f.j >= M.cols()) throw std::invalid_argument("entry index outside matrix");
      return M(f.i, f.j);
    case K::Lpm: return lpm(M, f.i);
    case K::LinearForm: {
      if (f.W.rows() != M.rows() || f.W.cols() != M.cols()) throw std::invalid_argument("linear form shape mismatch");
      S acc = lift<S>(f.b);
      for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
          if (!f.W(i, j).is_zero()) acc += M(i, j) * lift<S>(f.W(i, j));
      return acc;
    }
    case K::Trace: return trace(M);
    case K::InvariantPk: {
      std::size_t n = M.rows();
      Mat<S> D = lift_mat<S>(f.D);
      Mat<S> Dc = lift_mat<S>(conj_entries(f.D));
      Mat<S> Mc = f.conj == ConjMode::Direct ? conj_entries(M) : conj_via_minors(M, f.Q);
      Mat<S> A = D * M * D, B = Dc * Mc * Dc;
      S acc = ScalarTraits<S>::zero();
      if (f.i == 1) {
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) acc += A(r, c) * B(r, c);
        return acc;
      }
      std::vector<std::vector<std::size_t>> subs;
      combinations(n, f.i, subs);
      for (const auto& s : subs)
        for (const auto& u : subs) acc += det(submatrix(A, s, u)) * det(submatrix(B, s, u));
      return acc;
    }
    case K::Univariate: {
      S z = eval_node(*f.kids[0], M, t, snap);
      if constexpr (std::is_same_v<S, FloatComplex>) {
        if (snap > 0 && f.poly->kind == UniPoly::Kind::Lagrange)
          for (std::size_t k = 0; k < f.poly->nodes.size(); ++k)
            if (std::abs(z - lift<FloatComplex>(f.poly->nodes[k])) <= snap) return FloatComplex(k == f.poly->point ? 1.0 : 0.0, 0.0);
      }
      return f.poly->eval(z);
    }
    case K::Product: {
      S acc = lift<S>(GaussRational(1));
      for (const auto& c : f.kids) acc = acc * eval_node(*c, M, t, snap);
      return acc;
    }
    case K::Sum: {
      S acc = ScalarTraits<S>::zero();
      for (const auto& c : f.kids) acc += eval_node(*c, M, t, snap);
      return acc;
    }
    case K::Affine: return eval_node(*f.kids[0], M, t, snap) * lift<S>(f.a) + lift<S>(f.b);
    case K::DivEps: return divide_eps(eval_node(*f.kids[0], M, t, snap), f.k * t);
    case K::Reparam: return eval_node(*f.kids[0], M, t * f.k, snap);
    case K::MatrixTransform: {
      Mat<S> N = lift_mat<S>(f.L) * M * lift_mat<S>(f.R);
      if (f.sub_identity)
        for (std::size_t i = 0; i < N.rows(); ++i) N(i, i) -= lift<S>(GaussRational(1));
      if (f.k) N = N.map([&](const S& x) { return divide_eps(x, f.k * t); });
      return eval_node(*f.kids[0], N, t, snap);
    }
  }
  throw std::logic_error("unknown separating-function node");
}

const char* kind_name(SepNode::Kind k) {
  using K = SepNode::Kind;
  switch (k) {
    case K::Const: return "const";
    case K::Entry: return "entry";
    case K::Lpm: return "lpm";
    case K::LinearForm: return "linear_form";
    case K::Trace: return "trace";
    case K::InvariantPk: return "invariant_pk";
    case K::Univariate: return "univariate";
    case K::Product: return "product";
    case K::Sum: return "sum";
    case K::Affine: return "affine";
    case K::DivEps: return "div_eps";
    case K::Reparam: return "reparam";
    case K::MatrixTransform: return "matrix_transform";
  }
  return "?";
}

}  // namespace

SepFn sep_const(const GaussRational& c) {
  auto p = node(SepNode::Kind::Const);
  p->a = c;
  return p;
}

SepFn sep_entry(std::size_t i, std::size_t j) {
  auto p = node(SepNode::Kind::Entry);
  p->i = i;
  p->j = j;
  p->degree = 1;
  return p;
}

SepFn sep_lpm(std::size_t j) {
  auto p = node(SepNode::Kind::Lpm);
  p->i = j;
  p->degree = static_cast<long>(j);
  return p;
}

SepFn sep_sum_lpm(std::size_t n) {
  std::vector<SepFn> v;
  for (std::size_t j = 1; j <= n; ++j) v.push_back(sep_lpm(j));
  return sep_sum(std::move(v));
}

SepFn sep_linear_form(Mat<GaussRational> W, GaussRational b) {
  auto p = node(SepNode::Kind::LinearForm);
  bool any = std::any_of(W.data().begin(), W.data().end(), [](const GaussRational& x) { return !x.is_zero(); });
  p->W = std::move(W);
  p->b = std::move(b);
  p->degree = any ? 1 : 0;
  return p;
}

SepFn sep_trace() {
  auto p = node(SepNode::Kind::Trace);
  p->degree = 1;
  return p;
}

SepFn sep_invariant_pk(std::size_t k, Mat<GaussRational> D, Mat<GaussRational> Q, ConjMode mode) {
  if (!D.square() || k == 0 || k > D.rows()) throw std::invalid_argument("invariant p_k needs 1 <= k <= n and square D");
  if (mode == ConjMode::Minor && (Q.rows() != D.rows() || !Q.square()))
    throw std::invalid_argument("minor-mode invariant needs the form Q");
  auto p = node(SepNode::Kind::InvariantPk);
  p->i = k;
  long n = static_cast<long>(D.rows());
  // conj(M) is degree 1 in entries and conjugates, or degree n-1 via minors
  p->degree = mode == ConjMode::Direct ? 2 * static_cast<long>(k) : static_cast<long>(k) * n;
  p->D = std::move(D);
  p->Q = std::move(Q);
  p->conj = mode;
  return p;
}

SepFn sep_apply(UniPoly poly, SepFn arg) {
  need(arg);
  auto p = node(SepNode::Kind::Univariate);
  p->degree = poly.degree() * arg->degree;
  p->poly = std::make_shared<const UniPoly>(std::move(poly));
  p->kids = {std::move(arg)};
  return p;
}

SepFn sep_product(std::vector<SepFn> fs) {
  auto p = node(SepNode::Kind::Product);
  for (const auto& f : fs) {
    need(f);
    p->degree += f->degree;
  }
  p->kids = std::move(fs);
  return p;
}

SepFn sep_sum(std::vector<SepFn> fs) {
  auto p = node(SepNode::Kind::Sum);
  for (const auto& f : fs) {
    need(f);
    p->degree = std::max(p->degree, f->degree);
  }
  p->kids = std::move(fs);
  return p;
}

SepFn sep_affine(const GaussRational& a, const GaussRational& b, SepFn f) {
  need(f);
  auto p = node(SepNode::Kind::Affine);
  p->a = a;
  p->b = b;
  p->degree = a.is_zero() ? 0 : f->degree;
  p->kids = {std::move(f)};
  return p;
}

SepFn sep_div_eps(int k, SepFn f) {
  need(f);
  if (k < 0) throw std::invalid_argument("eps division power must be nonnegative");
  auto p = node(SepNode::Kind::DivEps);
  p->k = k;
  p->degree = f->degree;
  p->kids = {std::move(f)};
  return p;
}

SepFn sep_reparam(int t, SepFn f) {
  need(f);
  if (t < 1) throw std::invalid_argument("reparametrization exponent must be >= 1");
  auto p = node(SepNode::Kind::Reparam);
  p->k = t;
  p->degree = f->degree;
  p->kids = {std::move(f)};
  return p;
}

SepFn sep_transform(Mat<GaussRational> L, Mat<GaussRational> R, bool sub_identity, int div_k, SepFn f) {
  need(f);
  if (!L.square() || !R.square() || L.rows() != R.rows()) throw std::invalid_argument("transform needs square L, R of equal size");
  auto p = node(SepNode::Kind::MatrixTransform);
  p->L = std::move(L);
  p->R = std::move(R);
  p->sub_identity = sub_identity;
  p->k = div_k;
  p->degree = f->degree;
  p->kids = {std::move(f)};
  return p;
}

EpsLaurent eval_series(const SepFn& f, const SeriesMat& M) {
  need(f);
  return eval_node<EpsLaurent>(*f, M, 1);
}

FloatComplex eval_float(const SepFn& f, const Mat<FloatComplex>& M) {
  need(f);
  return eval_node<FloatComplex>(*f, M, 1);
}

FloatComplex eval_float_snapped(const SepFn& f, const Mat<FloatComplex>& M, double snap) {
  need(f);
  return eval_node<FloatComplex>(*f, M, 1, snap);
}

GaussRational eval_exact(const SepFn& f, const Mat<GaussRational>& M) {
  need(f);
  return eval_node<GaussRational>(*f, M, 1);
}

int eps_division_depth(const SepFn& f) {
  need(f);
  int best = 0;
  for (const auto& c : f->kids) best = std::max(best, eps_division_depth(c));
  if (f->kind == SepNode::Kind::DivEps || f->kind == SepNode::Kind::MatrixTransform) best += f->k;
  if (f->kind == SepNode::Kind::Reparam) best *= f->k;
  return best;
}

nlohmann::json sep_json(const SepFn& f) {
  need(f);
  using K = SepNode::Kind;
  nlohmann::json j;
  j["node"] = kind_name(f->kind);
  j["degree"] = f->degree;
  switch (f->kind) {
    case K::Const: j["value"] = scalar_json(f->a); break;
    case K::Entry: j["i"] = f->i; j["j"] = f->j; break;
    case K::Lpm: j["order"] = f->i; break;
    case K::LinearForm: j["weights"] = matrix_json(f->W); j["offset"] = scalar_json(f->b); break;
    case K::Trace: break;
    case K::InvariantPk:
      j["k"] = f->i;
      j["D"] = matrix_json(f->D);
      j["conj"] = f->conj == ConjMode::Direct ? "direct" : "minor";
      if (f->conj == ConjMode::Minor) j["Q"] = matrix_json(f->Q);
      break;
    case K::Univariate: j["poly"] = f->poly->to_json(); break;
    case K::Product:
    case K::Sum: break;
    case K::Affine: j["a"] = scalar_json(f->a); j["b"] = scalar_json(f->b); break;
    case K::DivEps: j["k"] = f->k; break;
    case K::Reparam: j["t"] = f->k; break;
    case K::MatrixTransform:
      j["L"] = matrix_json(f->L);
      j["R"] = matrix_json(f->R);
      j["sub_identity"] = f->sub_identity;
      j["div_eps"] = f->k;
      break;
  }
  if (!f->kids.empty()) {
    nlohmann::json ks = nlohmann::json::array();
    for (const auto& c : f->kids) ks.push_back(sep_json(c));
    j["args"] = ks;
  }
  return j;
}

}  // namespace liemm
