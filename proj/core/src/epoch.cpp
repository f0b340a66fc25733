#include "dynmis/types.hpp"

namespace dynmis {

namespace {

// r^k with saturation at 2^64-1.
std::uint64_t pow_sat(std::uint64_t r, unsigned k) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= r;
    if (acc > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::uint64_t ceil_root(std::uint64_t x, unsigned k) {
  if (x <= 1) return x;
  std::uint64_t lo = 1, hi = x;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pow_sat(mid, k) >= x) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

EpochConfig EpochConfig::for_edge_count(std::uint64_t m, std::uint64_t start_index) {
  EpochConfig cfg;
  cfg.m_snapshot = m == 0 ? 1 : m;
  // ceil(m^{3/4}) is the smallest t with t^4 >= m^3.
  unsigned __int128 m3 = static_cast<unsigned __int128>(cfg.m_snapshot) * cfg.m_snapshot;
  m3 *= cfg.m_snapshot;
  std::uint64_t m3_sat =
      m3 > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(m3);
  cfg.t_high = ceil_root(m3_sat, 4);
  cfg.t_medhigh = ceil_root(cfg.m_snapshot, 2);
  cfg.t_medlow = ceil_root(cfg.m_snapshot, 4);
  cfg.epoch_start_index = start_index;
  return cfg;
}

}  // namespace dynmis
