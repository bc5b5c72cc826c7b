#ifndef SPX_SRC_COMM_TAGS_HPP
#define SPX_SRC_COMM_TAGS_HPP

namespace spx::detail {

// Negative tags are reserved for library traffic; user tags are >= 0.
inline constexpr int kCollectiveTag = -1;
inline constexpr int kPlanTag = -2;

}  // namespace spx::detail

#endif
