// Kernel of two short 2-d paths under each scheme, next to the signature oracle.
#include <cstdio>

#include "polysig/polysig.hpp"

int main() {
    using namespace polysig;
    const auto x = make_path({{0.0, 0.0}, {0.4, 0.3}, {0.1, 0.9}, {0.7, 1.2}});
    const auto y = make_path({{0.0, 0.0}, {0.5, -0.2}, {0.8, 0.4}});

    std::printf("oracle (level 18)   %.16f\n", sigoracle::truncated_kernel(x, y));
    std::printf("polyapprox N=8      %.16f\n", kernel(x, y, {Scheme::polyapprox, 8}));
    std::printf("polyinterp N=8      %.16f\n", kernel(x, y, {Scheme::polyinterp, 8}));
    std::printf("fd2 refine=16       %.16f\n", kernel(x, y, {Scheme::fd2, 8, 16}));

    const PathBatch batch{x, y, make_path({{0.0, 0.0}, {-0.3, 0.6}})};
    const GramMatrix g = gram(batch, batch, {Scheme::polyapprox, 10});
    for (std::size_t i = 0; i < g.rows; ++i) {
        for (std::size_t j = 0; j < g.cols; ++j) std::printf("%10.6f", g(i, j));
        std::printf("\n");
    }
}
