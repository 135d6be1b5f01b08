#include "acqgraph/rng.hpp"

namespace acqgraph {

std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                          std::uint64_t index) {
    // FNV-1a over the label, then SplitMix64 finalization with root and index.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    SplitMix64 mixer(root ^ h);
    mixer.next();
    SplitMix64 indexed(mixer.next() + 0x9e3779b97f4a7c15ULL * (index + 1));
    return indexed.next();
}

}  // namespace acqgraph
