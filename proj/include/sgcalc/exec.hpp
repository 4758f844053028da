#ifndef SGCALC_EXEC_HPP
#define SGCALC_EXEC_HPP

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sgcalc::exec {

enum class Mode { serial, parallel };

Mode default_mode();
void set_default_mode(Mode m);

// Chunk size for deterministic reductions. Partial sums are formed per
// fixed-size chunk and combined in chunk order, so the result does not
// depend on the number of threads.
inline constexpr std::size_t chunk_size = 4096;

// result = zero; for each chunk c (in order): result += sum over chunk of term(k).
// term(k) must be pure. T needs: copy, operator+=.
template <class T, class TermFn>
T indexed_sum(std::size_t n, const T& zero, TermFn&& term, Mode mode) {
    if (mode == Mode::serial || n < 2 * chunk_size) {
        T acc = zero;
        for (std::size_t k = 0; k < n; ++k) acc += term(k);
        return acc;
    }
    const std::size_t nchunks = (n + chunk_size - 1) / chunk_size;
    std::vector<T> partial(nchunks, zero);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * chunk_size;
        const std::size_t hi = std::min(n, lo + chunk_size);
        T acc = zero;
        for (std::size_t k = lo; k < hi; ++k) acc += term(k);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    T acc = zero;
    for (const T& p : partial) acc += p;
    return acc;
}

// Independent per-index writes; deterministic under any thread count.
template <class BodyFn>
void parallel_for(std::size_t n, BodyFn&& body, Mode mode) {
    if (mode == Mode::serial) {
        for (std::size_t k = 0; k < n; ++k) body(k);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long k = 0; k < static_cast<long long>(n); ++k)
        body(static_cast<std::size_t>(k));
}

}  // namespace sgcalc::exec

#endif
