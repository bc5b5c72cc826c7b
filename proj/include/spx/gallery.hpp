#ifndef SPX_GALLERY_HPP
#define SPX_GALLERY_HPP

#include "spx/block_map.hpp"
#include "spx/crs_matrix.hpp"
#include "spx/multi_vector.hpp"

namespace spx {

enum class GalleryKind { Laplace2D };

struct GalleryOptions {
  GalleryKind kind = GalleryKind::Laplace2D;
  int nx = 1;
  int ny = 1;
  bool use_long_long = false;
  long long gid_offset = 0;
};

/// Generated test problem: b = A * xexact with xexact = ones, x = zeros.
struct GalleryProblem {
  BlockMap map;
  CrsMatrix matrix;
  Vector x;
  Vector b;
  Vector xexact;
};

/// Laplace2D is the 5-point stencil on an nx-by-ny grid: 4 on the diagonal
/// and -1 for each grid neighbour. Grid point (i, j) has GID
/// gid_offset + j * nx + i. Collective.
GalleryProblem generate_crs_problem(GalleryKind kind, int nx, int ny, IndexWidth width,
                                    long long gid_offset, const Comm& comm);
GalleryProblem generate_crs_problem(const GalleryOptions& options, const Comm& comm);

}  // namespace spx

#endif  // SPX_GALLERY_HPP
