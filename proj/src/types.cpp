#include "hermprod/types.hpp"

#include <algorithm>

#include "hermprod/error.hpp"

namespace hermprod {

void EnsembleParams::validate() const {
    if (M < 0) throw DomainError("product depth must be non-negative");
    if (n < 1) throw DomainError("base dimension must be positive");
    if (static_cast<int>(nu.size()) != M)
        throw DomainError("expected " + std::to_string(M) + " nu values, got " +
                          std::to_string(nu.size()));
    for (int v : nu)
        if (v < 0) throw DomainError("nu entries must be non-negative");
}

std::vector<int> EnsembleParams::nu_full() const {
    std::vector<int> out{0};
    out.insert(out.end(), nu.begin(), nu.end());
    return out;
}

EnsembleParams make_params(int M, int n, std::vector<int> nu) {
    if (nu.empty() && M > 0) nu.assign(M, 0);
    EnsembleParams p{M, n, std::move(nu)};
    p.validate();
    return p;
}

SignedDiagonal SignedDiagonal::from(std::vector<double> a) {
    if (a.empty()) throw DomainError("diagonal must be non-empty");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) throw DomainError("diagonal entries must be nonzero");
        if (i > 0 && !(a[i - 1] < a[i]))
            throw DomainError("diagonal entries must be strictly ascending");
    }
    SignedDiagonal d;
    d.n0 = static_cast<int>(std::count_if(a.begin(), a.end(), [](double v) { return v < 0.0; }));
    d.entries = std::move(a);
    return d;
}

}  // namespace hermprod
