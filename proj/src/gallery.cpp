#include "spx/gallery.hpp"

#include <string>

#include "map_data.hpp"
#include "spx/error.hpp"

namespace spx {

namespace {

template <class GO>
void fill_laplace2d(CrsMatrix& a, const BlockMap& map, int nx, int ny, long long offset) {
  std::vector<GO> cols;
  std::vector<double> vals;
  for (GO gid : detail::my_gids<GO>(map)) {
    const long long p = static_cast<long long>(gid) - offset;
    const long long i = p % nx;
    const long long j = p / nx;
    cols.clear();
    vals.clear();
    auto add = [&](long long q, double v) {
      cols.push_back(static_cast<GO>(q + offset));
      vals.push_back(v);
    };
    if (j > 0) add(p - nx, -1.0);
    if (i > 0) add(p - 1, -1.0);
    add(p, 4.0);
    if (i + 1 < nx) add(p + 1, -1.0);
    if (j + 1 < ny) add(p + nx, -1.0);
    a.insert_global_values(gid, std::span<const GO>(cols), std::span<const double>(vals));
  }
}

}  // namespace

GalleryProblem generate_crs_problem(GalleryKind kind, int nx, int ny, IndexWidth width,
                                    long long gid_offset, const Comm& comm) {
  if (kind != GalleryKind::Laplace2D) throw_error(ErrorKind::Usage, "unknown gallery kind");
  if (nx < 1 || ny < 1) {
    throw_error(ErrorKind::ContractViolation, "generate_crs_problem: nx and ny must be >= 1");
  }
  const long long n = static_cast<long long>(nx) * ny;
  BlockMap map = BlockMap::uniform(n, gid_offset, comm, width);
  CrsMatrix a(map);
  detail::dispatch_width(map.width_state(), [&](auto tag) {
    fill_laplace2d<decltype(tag)>(a, map, nx, ny, gid_offset);
  });
  a.fill_complete();

  GalleryProblem problem{map, std::move(a), Vector(map), Vector(map), Vector(map)};
  problem.xexact.put_scalar(1.0);
  problem.matrix.multiply(false, problem.xexact, problem.b);
  return problem;
}

GalleryProblem generate_crs_problem(const GalleryOptions& options, const Comm& comm) {
  return generate_crs_problem(options.kind, options.nx, options.ny,
                              options.use_long_long ? IndexWidth::I64 : IndexWidth::I32,
                              options.gid_offset, comm);
}

}  // namespace spx
