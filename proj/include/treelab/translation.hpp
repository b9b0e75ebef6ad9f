#pragma once

#include "treelab/pattern.hpp"

namespace treelab {

struct Piece {
  Pattern source;
  Pattern target;  // member i of source goes to member i of target
  bool completion = false;
};

enum class ImageKind { Cylinder, Split };

struct CylinderImage {
  ImageKind kind = ImageKind::Split;
  std::string bits;
};

// Bijection of [0,1) that translates each member of each source pattern onto
// the same-index member of its target pattern.
class PiecewiseTranslation {
 public:
  PiecewiseTranslation() = default;
  PiecewiseTranslation(std::string name, std::vector<Piece> pieces);
  static PiecewiseTranslation identity(std::string name);

  const std::string& name() const { return name_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_identity() const { return identity_; }
  PiecewiseTranslation inverse() const;

  // Image of a cylinder if it is again a cylinder.
  CylinderImage image(std::string_view region) const;
  void apply(LazyPoint& x) const;
  // Exact preimage of a set.
  DyadicSet preimage(const DyadicSet& s) const;
  // Translation amount of member i of piece k.
  Dyadic offset(std::size_t k, int i) const;

  // Sources (resp. targets) disjoint with measures summing to 1; members up
  // to `level` bits are compared explicitly, deeper members by exact tail measure.
  bool verify_partition(unsigned level, bool targets, std::string* why = nullptr) const;

 private:
  std::string name_;
  std::vector<Piece> pieces_;
  bool identity_ = false;
};

}  // namespace treelab
