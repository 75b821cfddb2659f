#include "gke/linear_maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gke/rng.hpp"

namespace gke {

struct PositiveLinearMap::Impl {
  Kind kind;
  int in_dim = 0;
  int out_dim = 0;
  Matrix isometry;                                         // isometry_conjugation
  std::vector<std::vector<int>> blocks;                    // pinching
  CVector state;                                           // vector_state
  std::vector<std::pair<double, PositiveLinearMap>> parts;  // mixture
};

namespace {

Matrix apply_raw(const PositiveLinearMap::Impl& impl, const Matrix& a);

Matrix apply_pinching(const std::vector<std::vector<int>>& blocks, const Matrix& a) {
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (const auto& block : blocks)
    for (int i : block)
      for (int j : block) out(i, j) = a(i, j);
  return out;
}

Matrix apply_raw(const PositiveLinearMap::Impl& impl, const Matrix& a) {
  switch (impl.kind) {
    case PositiveLinearMap::Kind::isometry_conjugation:
      return impl.isometry.adjoint() * a * impl.isometry;
    case PositiveLinearMap::Kind::pinching:
      return apply_pinching(impl.blocks, a);
    case PositiveLinearMap::Kind::trace_state: {
      const double mean_trace = a.trace().real() / impl.in_dim;
      return mean_trace * Matrix::Identity(impl.out_dim, impl.out_dim);
    }
    case PositiveLinearMap::Kind::vector_state: {
      Matrix out(1, 1);
      out(0, 0) = (impl.state.adjoint() * a * impl.state)(0, 0);
      return out;
    }
    case PositiveLinearMap::Kind::mixture: {
      Matrix out = Matrix::Zero(impl.out_dim, impl.out_dim);
      for (const auto& [weight, map] : impl.parts)
        out += weight * map.apply(HermitianMatrix(a)).entries();
      return out;
    }
  }
  throw Error("positive linear map: unreachable kind");
}

void validate_map(const PositiveLinearMap::Impl& impl, const std::string& what) {
  // unitality
  const Matrix image_of_identity = apply_raw(impl, Matrix::Identity(impl.in_dim, impl.in_dim));
  const double unital_defect =
      (image_of_identity - Matrix::Identity(impl.out_dim, impl.out_dim)).norm();
  if (unital_defect > 1e-10)
    throw ValidationError(what + ": map is not unital (defect " + std::to_string(unital_defect) + ")");

  // positivity spot check on random PSD inputs; fixed stream keeps it deterministic
  Rng rng(0xC0FFEEULL, fnv1a(what) ^ static_cast<std::uint64_t>(impl.in_dim));
  for (int trial = 0; trial < 50; ++trial) {
    Matrix g(impl.in_dim, impl.in_dim);
    for (int j = 0; j < impl.in_dim; ++j)
      for (int i = 0; i < impl.in_dim; ++i) g(i, j) = rng.complex_gaussian();
    const Matrix psd = g.adjoint() * g;
    const HermitianMatrix image(apply_raw(impl, psd));
    const EigenSystem es = eigendecompose(image);
    if (es.eigenvalues(0) < -1e-9)
      throw ValidationError(what + ": positivity violated (eigenvalue " + std::to_string(es.eigenvalues(0)) + ")");
  }
}

std::shared_ptr<const PositiveLinearMap::Impl> finish(PositiveLinearMap::Impl impl, const std::string& what) {
  validate_map(impl, what);
  return std::make_shared<const PositiveLinearMap::Impl>(std::move(impl));
}

}  // namespace

PositiveLinearMap PositiveLinearMap::isometry_conjugation(const Matrix& v) {
  Impl impl;
  impl.kind = Kind::isometry_conjugation;
  impl.in_dim = static_cast<int>(v.rows());
  impl.out_dim = static_cast<int>(v.cols());
  if (impl.out_dim < 1 || impl.out_dim > impl.in_dim)
    throw DimensionError("isometry_conjugation: need 1 <= k2 <= k1");
  const double defect = (v.adjoint() * v - Matrix::Identity(impl.out_dim, impl.out_dim)).norm();
  if (defect > 1e-10)
    throw ValidationError("isometry_conjugation: V*V differs from identity by " + std::to_string(defect));
  impl.isometry = v;
  return PositiveLinearMap(finish(std::move(impl), "isometry_conjugation"));
}

PositiveLinearMap PositiveLinearMap::pinching(const std::vector<std::vector<int>>& blocks, int dim) {
  if (dim < 1) throw DimensionError("pinching: need dim >= 1");
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  for (const auto& block : blocks) {
    if (block.empty()) throw ValidationError("pinching: empty block");
    for (int i : block) {
      if (i < 0 || i >= dim) throw ValidationError("pinching: index " + std::to_string(i) + " outside 0.." + std::to_string(dim - 1));
      if (seen[static_cast<std::size_t>(i)]) throw ValidationError("pinching: index " + std::to_string(i) + " repeated");
      seen[static_cast<std::size_t>(i)] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw ValidationError("pinching: blocks do not cover every index");
  Impl impl;
  impl.kind = Kind::pinching;
  impl.in_dim = dim;
  impl.out_dim = dim;
  impl.blocks = blocks;
  return PositiveLinearMap(finish(std::move(impl), "pinching"));
}

PositiveLinearMap PositiveLinearMap::trace_state(int in_dim, int out_dim) {
  if (in_dim < 1 || out_dim < 1) throw DimensionError("trace_state: dimensions must be positive");
  Impl impl;
  impl.kind = Kind::trace_state;
  impl.in_dim = in_dim;
  impl.out_dim = out_dim;
  return PositiveLinearMap(finish(std::move(impl), "trace_state"));
}

PositiveLinearMap PositiveLinearMap::vector_state(const CVector& x) {
  if (x.size() < 1) throw DimensionError("vector_state: empty vector");
  const double norm = x.norm();
  if (!(norm > 0.0)) throw ValidationError("vector_state: zero vector");
  Impl impl;
  impl.kind = Kind::vector_state;
  impl.in_dim = static_cast<int>(x.size());
  impl.out_dim = 1;
  impl.state = x / norm;
  return PositiveLinearMap(finish(std::move(impl), "vector_state"));
}

PositiveLinearMap PositiveLinearMap::mixture(const std::vector<std::pair<double, PositiveLinearMap>>& parts) {
  if (parts.empty()) throw ValidationError("mixture: need at least one component");
  double sum = 0.0;
  for (const auto& [weight, map] : parts) {
    if (!(weight > 0.0)) throw ValidationError("mixture: weights must be strictly positive");
    if (map.in_dim() != parts.front().second.in_dim() || map.out_dim() != parts.front().second.out_dim())
      throw DimensionError("mixture: component dimensions differ");
    sum += weight;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("mixture: weights must sum to 1");
  Impl impl;
  impl.kind = Kind::mixture;
  impl.in_dim = parts.front().second.in_dim();
  impl.out_dim = parts.front().second.out_dim();
  impl.parts = parts;
  return PositiveLinearMap(finish(std::move(impl), "mixture"));
}

PositiveLinearMap PositiveLinearMap::identity(int dim) {
  std::vector<int> all(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) all[static_cast<std::size_t>(i)] = i;
  return pinching({all}, dim);
}

PositiveLinearMap::Kind PositiveLinearMap::kind() const { return impl_->kind; }
int PositiveLinearMap::in_dim() const { return impl_->in_dim; }
int PositiveLinearMap::out_dim() const { return impl_->out_dim; }

std::string PositiveLinearMap::name() const {
  switch (impl_->kind) {
    case Kind::isometry_conjugation:
      return "isometry:k2=" + std::to_string(impl_->out_dim);
    case Kind::pinching: {
      std::ostringstream os;
      os << "pinch:";
      for (std::size_t b = 0; b < impl_->blocks.size(); ++b) {
        if (b) os << "|";
        for (std::size_t i = 0; i < impl_->blocks[b].size(); ++i) {
          if (i) os << ",";
          os << impl_->blocks[b][i] + 1;
        }
      }
      return os.str();
    }
    case Kind::trace_state:
      return "trace:k2=" + std::to_string(impl_->out_dim);
    case Kind::vector_state:
      return "vecstate";
    case Kind::mixture: {
      std::ostringstream os;
      os << "mix:";
      for (std::size_t i = 0; i < impl_->parts.size(); ++i) {
        if (i) os << ",";
        os << impl_->parts[i].first << "*" << impl_->parts[i].second.name();
      }
      return os.str();
    }
  }
  return "?";
}

HermitianMatrix PositiveLinearMap::apply(const HermitianMatrix& a) const {
  if (a.dim() != impl_->in_dim)
    throw DimensionError("positive linear map: input dim " + std::to_string(a.dim()) + ", expected " +
                         std::to_string(impl_->in_dim));
  return HermitianMatrix(apply_raw(*impl_, a.entries()));
}

PositiveDefiniteMatrix PositiveLinearMap::apply(const PositiveDefiniteMatrix& a) const {
  return PositiveDefiniteMatrix(apply(a.base()));
}

MatrixEnsemble PositiveLinearMap::apply(const MatrixEnsemble& e) const {
  std::vector<PositiveDefiniteMatrix> out;
  out.reserve(static_cast<std::size_t>(e.size()));
  for (const auto& a : e.matrices()) out.push_back(apply(a));
  return MatrixEnsemble(std::move(out), e.weights(), e.bounds());
}

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("could not parse " + what + " from '" + text + "'");
  }
}

double parse_num(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("could not parse " + what + " from '" + text + "'");
  }
}

// key=value options after the kind token, e.g. "isometry:k2=2:seed=7"
struct SpecOptions {
  int k2 = -1;
  std::uint64_t seed = 0;
};

SpecOptions parse_options(const std::vector<std::string>& tokens, std::size_t from, const std::string& what) {
  SpecOptions opt;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    const auto kv = split_on(tokens[i], '=');
    if (kv.size() != 2) throw ValidationError(what + ": expected key=value, got '" + tokens[i] + "'");
    if (kv[0] == "k2")
      opt.k2 = parse_int(kv[1], what + " k2");
    else if (kv[0] == "seed")
      opt.seed = static_cast<std::uint64_t>(parse_int(kv[1], what + " seed"));
    else
      throw ValidationError(what + ": unknown option '" + kv[0] + "'");
  }
  return opt;
}

// mixture components are comma separated, but pinching block lists also use
// commas; a component starts at a token containing '*'
std::vector<std::string> split_mixture(const std::string& body) {
  std::vector<std::string> components;
  for (const auto& token : split_on(body, ',')) {
    if (token.find('*') != std::string::npos || components.empty())
      components.push_back(token);
    else
      components.back() += "," + token;
  }
  return components;
}

}  // namespace

PositiveLinearMap PositiveLinearMap::parse(const std::string& spec, int in_dim) {
  if (spec == "identity") return identity(in_dim);
  if (spec == "trace") return trace_state(in_dim, in_dim);
  const auto tokens = split_on(spec, ':');
  const std::string& kind = tokens.front();

  if (kind == "trace") {
    const SpecOptions opt = parse_options(tokens, 1, "trace");
    return trace_state(in_dim, opt.k2 > 0 ? opt.k2 : in_dim);
  }
  if (kind == "isometry") {
    const SpecOptions opt = parse_options(tokens, 1, "isometry");
    const int k2 = opt.k2 > 0 ? opt.k2 : in_dim;
    return make_random_map(Kind::isometry_conjugation, in_dim, k2, opt.seed);
  }
  if (kind == "vecstate") {
    const SpecOptions opt = parse_options(tokens, 1, "vecstate");
    return make_random_map(Kind::vector_state, in_dim, 1, opt.seed);
  }
  if (kind == "pinch") {
    if (tokens.size() != 2) throw ValidationError("pinch spec must look like pinch:1|2,3");
    std::vector<std::vector<int>> blocks;
    for (const auto& blockText : split_on(tokens[1], '|')) {
      std::vector<int> block;
      for (const auto& indexText : split_on(blockText, ','))
        block.push_back(parse_int(indexText, "pinch index") - 1);  // 1-based in specs
      blocks.push_back(std::move(block));
    }
    return pinching(blocks, in_dim);
  }
  if (kind == "mix") {
    const std::string body = spec.substr(4);
    std::vector<std::pair<double, PositiveLinearMap>> parts;
    for (const auto& component : split_mixture(body)) {
      const std::size_t star = component.find('*');
      if (star == std::string::npos) throw ValidationError("mixture component '" + component + "' lacks weight*map");
      const double weight = parse_num(component.substr(0, star), "mixture weight");
      parts.emplace_back(weight, parse(component.substr(star + 1), in_dim));
    }
    return mixture(parts);
  }
  throw ValidationError("unknown map spec '" + spec + "'");
}

PositiveLinearMap make_random_map(PositiveLinearMap::Kind kind, int in_dim, int out_dim, std::uint64_t seed) {
  Rng rng(seed, 0x5eedABBAULL ^ (static_cast<std::uint64_t>(in_dim) << 16) ^ static_cast<std::uint64_t>(out_dim));
  switch (kind) {
    case PositiveLinearMap::Kind::isometry_conjugation: {
      if (out_dim > in_dim) throw DimensionError("make_random_map: isometry needs k2 <= k1");
      const Matrix u = rng.unitary(in_dim);
      return PositiveLinearMap::isometry_conjugation(u.leftCols(out_dim));
    }
    case PositiveLinearMap::Kind::pinching: {
      if (out_dim != in_dim) throw DimensionError("make_random_map: pinching preserves dimension");
      // random block count, indices dealt round-robin after a shuffle
      std::vector<int> order(static_cast<std::size_t>(in_dim));
      for (int i = 0; i < in_dim; ++i) order[static_cast<std::size_t>(i)] = i;
      for (int i = in_dim - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(rng.uniform_index(static_cast<std::uint64_t>(i + 1)))]);
      const int block_count = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(in_dim)));
      std::vector<std::vector<int>> blocks(static_cast<std::size_t>(block_count));
      for (int i = 0; i < in_dim; ++i) blocks[static_cast<std::size_t>(i % block_count)].push_back(order[static_cast<std::size_t>(i)]);
      return PositiveLinearMap::pinching(blocks, in_dim);
    }
    case PositiveLinearMap::Kind::trace_state:
      return PositiveLinearMap::trace_state(in_dim, out_dim);
    case PositiveLinearMap::Kind::vector_state:
      return PositiveLinearMap::vector_state(rng.unit_vector(in_dim));
    case PositiveLinearMap::Kind::mixture: {
      if (out_dim != in_dim) throw DimensionError("make_random_map: mixture preserves dimension here");
      auto pinch = make_random_map(PositiveLinearMap::Kind::pinching, in_dim, in_dim, seed ^ 0x9e37ULL);
      auto trace = PositiveLinearMap::trace_state(in_dim, in_dim);
      const auto w = rng.simplex_weights(2);
      return PositiveLinearMap::mixture({{w[0], pinch}, {w[1], trace}});
    }
  }
  throw Error("make_random_map: unreachable kind");
}

}  // namespace gke
