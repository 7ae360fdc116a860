#pragma once

#include <cstddef>
#include <vector>

namespace oddlef {

// Execution policy for the numeric kernels. Serial is the reference
// implementation; the parallel path must produce bit-identical results, which
// the helpers below guarantee by fixing the reduction tree independently of
// the thread count.
enum class Exec { serial, parallel };

namespace detail {

template <class T>
T pairwise_sum(const T* data, std::size_t n) {
  if (n <= 16) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

}  // namespace detail

// out[i] = fill(i) for i in [0, n)
template <class F>
void indexed_fill(std::size_t n, F&& fill, Exec ex) {
  if (ex == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fill(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) fill(i);
  }
}

// sum_i f(i), evaluated element-by-element into a buffer and reduced with a
// fixed pairwise tree. Identical bytes for serial and parallel execution.
template <class T, class F>
T indexed_sum(std::size_t n, F&& f, Exec ex) {
  std::vector<T> buf(n);
  indexed_fill(
      n, [&](std::size_t i) { buf[i] = f(i); }, ex);
  return detail::pairwise_sum(buf.data(), n);
}

}  // namespace oddlef
