#include "speclat/direct_sum.hpp"

#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace speclat {

namespace {

void require_same_profile(const DirectSumElement& a, const DirectSumElement& b) {
  if (a.profile != b.profile) throw std::invalid_argument("direct-sum profiles differ");
}

}  // namespace

DirectSumElement DirectSumElement::zeros(const BlockProfile& profile) {
  DirectSumElement x{profile, {}};
  for (auto m : profile.dims) x.blocks.push_back(Matrixd::Zero(m, m));
  return x;
}

DirectSumElement DirectSumElement::identity(const BlockProfile& profile) {
  DirectSumElement x{profile, {}};
  for (auto m : profile.dims) x.blocks.push_back(Matrixd::Identity(m, m));
  return x;
}

DirectSumElement DirectSumElement::from_blocks(const BlockProfile& profile, std::vector<Matrixd> blocks,
                                               const Toleranced& tol) {
  if (blocks.size() != profile.size())
    throw std::invalid_argument("expected " + std::to_string(profile.size()) + " blocks, got " +
                                std::to_string(blocks.size()));
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const std::string name = "block " + std::to_string(j + 1);
    if (blocks[j].rows() != profile.dim(j) || blocks[j].cols() != profile.dim(j))
      throw std::invalid_argument(name + " has the wrong shape");
    require_hermitian(blocks[j], tol, name.c_str());
  }
  return DirectSumElement{profile, std::move(blocks)};
}

DirectSumElement DirectSumElement::from_block_diagonal(const BlockProfile& profile, const Matrixd& m) {
  if (m.rows() != profile.total() || m.cols() != profile.total())
    throw std::invalid_argument("matrix does not match the block profile");
  DirectSumElement x{profile, {}};
  for (std::size_t j = 0; j < profile.size(); ++j) {
    const Index o = profile.offset(j), d = profile.dim(j);
    x.blocks.push_back(m.block(o, o, d, d));
  }
  return x;
}

Matrixd DirectSumElement::assemble() const {
  const Index n = profile.total();
  Matrixd m = Matrixd::Zero(n, n);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const Index o = profile.offset(j), d = profile.dim(j);
    m.block(o, o, d, d) = blocks[j];
  }
  return m;
}

double DirectSumElement::norm() const {
  double out = 0;
  for (const auto& b : blocks) {
    Eigen::SelfAdjointEigenSolver<Matrixd> s((b + b.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
    out = std::max(out, s.eigenvalues().cwiseAbs().maxCoeff());
  }
  return out;
}

DirectSumElement& DirectSumElement::operator+=(const DirectSumElement& other) {
  require_same_profile(*this, other);
  for (std::size_t j = 0; j < blocks.size(); ++j) blocks[j] += other.blocks[j];
  return *this;
}

DirectSumElement& DirectSumElement::operator-=(const DirectSumElement& other) {
  require_same_profile(*this, other);
  for (std::size_t j = 0; j < blocks.size(); ++j) blocks[j] -= other.blocks[j];
  return *this;
}

DirectSumElement& DirectSumElement::operator*=(double s) {
  for (auto& b : blocks) b *= s;
  return *this;
}

DirectSumElement operator+(DirectSumElement a, const DirectSumElement& b) { return a += b; }
DirectSumElement operator-(DirectSumElement a, const DirectSumElement& b) { return a -= b; }
DirectSumElement operator-(DirectSumElement a) { return a *= -1.0; }
DirectSumElement operator*(double s, DirectSumElement a) { return a *= s; }

double max_distance(const DirectSumElement& a, const DirectSumElement& b) {
  require_same_profile(a, b);
  double d = 0;
  for (std::size_t j = 0; j < a.blocks.size(); ++j) d = std::max(d, max_norm(a.blocks[j] - b.blocks[j]));
  return d;
}

bool elements_equal(const DirectSumElement& a, const DirectSumElement& b, const Toleranced& tol) {
  return a.profile == b.profile && max_distance(a, b) <= tol.eps_recon;
}

bool in_cone(const DirectSumElement& x, Cone cone, const Toleranced& tol) {
  for (const auto& b : x.blocks)
    if (!in_cone<double>(b, cone, tol)) return false;
  return true;
}

void require_cone(const DirectSumElement& x, Cone cone, const Toleranced& tol, const char* what) {
  for (std::size_t j = 0; j < x.blocks.size(); ++j) {
    const std::string name = std::string(what) + " block " + std::to_string(j + 1);
    require_cone<double>(x.blocks[j], cone, tol, name.c_str());
  }
}

std::vector<SpectralFamilyd> ds_family(const DirectSumElement& x, const Toleranced& tol) {
  std::vector<SpectralFamilyd> out;
  for (const auto& b : x.blocks) out.push_back(family_of<double>(b, tol));
  return out;
}

bool ds_spec_leq(const DirectSumElement& x, const DirectSumElement& y, const Toleranced& tol) {
  require_same_profile(x, y);
  for (std::size_t j = 0; j < x.blocks.size(); ++j)
    if (!spec_leq<double>(x.blocks[j], y.blocks[j], tol)) return false;
  return true;
}

namespace {

template <typename Op>
DirectSumElement blockwise(std::span<const DirectSumElement> xs, Op op) {
  if (xs.empty()) throw std::invalid_argument("lattice operation on an empty family");
  DirectSumElement out{xs.front().profile, {}};
  std::vector<Matrixd> column(xs.size());
  for (std::size_t j = 0; j < out.profile.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      require_same_profile(xs.front(), xs[i]);
      column[i] = xs[i].blocks[j];
    }
    out.blocks.push_back(op(std::span<const Matrixd>(column)));
  }
  return out;
}

}  // namespace

DirectSumElement ds_join(std::span<const DirectSumElement> xs, Cone cone, const Toleranced& tol) {
  return blockwise(xs, [&](std::span<const Matrixd> c) { return spec_join<double>(c, cone, tol); });
}

DirectSumElement ds_meet(std::span<const DirectSumElement> xs, Cone cone, const Toleranced& tol) {
  return blockwise(xs, [&](std::span<const Matrixd> c) { return spec_meet<double>(c, cone, tol); });
}

DirectSumParts ds_pos_neg_parts(const DirectSumElement& x, const Toleranced& tol) {
  DirectSumParts out{DirectSumElement{x.profile, {}}, DirectSumElement{x.profile, {}}};
  for (const auto& b : x.blocks) {
    auto parts = pos_neg_parts<double>(b, tol);
    out.positive.blocks.push_back(std::move(parts.positive));
    out.negative.blocks.push_back(std::move(parts.negative));
  }
  return out;
}

std::vector<DirectSumElement> central_atoms(const BlockProfile& profile) {
  std::vector<DirectSumElement> out;
  for (std::size_t j = 0; j < profile.size(); ++j)
    out.push_back(embed(profile, j, Matrixd::Identity(profile.dim(j), profile.dim(j))));
  return out;
}

DirectSumElement embed(const BlockProfile& profile, std::size_t j, const Matrixd& block) {
  if (j >= profile.size()) throw std::out_of_range("block index out of range");
  if (block.rows() != profile.dim(j) || block.cols() != profile.dim(j))
    throw std::invalid_argument("embedded block has the wrong shape");
  DirectSumElement x = DirectSumElement::zeros(profile);
  x.blocks[j] = block;
  return x;
}

bool is_central(const DirectSumElement& z, const Toleranced& tol) {
  for (std::size_t j = 0; j < z.blocks.size(); ++j)
    if (!is_central<double>(z.blocks[j], BlockProfile::single(z.profile.dim(j)), tol)) return false;
  return true;
}

std::optional<DirectSumAtom> atom_scalar_decompose(const DirectSumElement& x, Cone cone,
                                                   const Toleranced& tol) {
  if (cone == Cone::self_adjoint)
    throw std::invalid_argument("atom characterisation needs the effect or positive cone");
  require_cone(x, cone, tol, "atom candidate");
  std::optional<std::size_t> support;
  for (std::size_t j = 0; j < x.blocks.size(); ++j) {
    if (max_norm(x.blocks[j]) <= tol.eps_recon) continue;
    if (support) return std::nullopt;
    support = j;
  }
  if (!support) return std::nullopt;
  auto a = atom_scalar_decompose<double>(x.blocks[*support], cone, tol);
  if (!a) return std::nullopt;
  return DirectSumAtom{*support, a->scale, std::move(a->atom)};
}

}  // namespace speclat
