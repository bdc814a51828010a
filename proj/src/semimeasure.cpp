#include "semireal/semimeasure.hpp"

#include "semireal/errors.hpp"

namespace semireal {

Q semimeasure_value(const Semimeasure& m, std::uint64_t i, std::uint64_t stages,
                    FuelMeter& meter) {
  auto s = m.weight(i);
  Q last = 0;
  for (std::uint64_t n = 0; n < stages; ++n) {
    auto p = s.at(n, meter);
    if (!p.ok()) break;
    if (*p < last) throw DomainError("mass estimate decreased at index " +
                                     std::to_string(i));
    last = *p;
  }
  return last;
}

Q semimeasure_prefix_total(const Semimeasure& m, std::uint64_t max_index,
                           std::uint64_t stages, FuelMeter& meter) {
  Q total = 0;
  for (std::uint64_t i = 0; i <= max_index; ++i)
    total += semimeasure_value(m, i, stages, meter);
  if (total > m.declared_total)
    throw DomainError("mass prefix " + q_str(total) + " exceeds declared total " +
                      q_str(m.declared_total));
  return total;
}

Q row_sum(const DoubleSeries& d, std::uint64_t i) {
  auto support = d.row_support(i);
  Q total = 0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (k > 0 && support[k] <= support[k - 1])
      throw RowNotFinite("row " + std::to_string(i) + " support not strictly sorted");
    Q t = d.term(i, support[k]);
    if (t < 0) throw DomainError("negative term in doubly indexed series");
    total += t;
  }
  return total;
}

}  // namespace semireal
