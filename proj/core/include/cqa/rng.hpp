#pragma once

#include <cstdint>

namespace cqa {

// splitmix64 step; used to decorrelate seeds derived from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Per-stream seed for sample/graph `index` under `master`. Independent of
// evaluation order, so parallel ensembles stay deterministic.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 1));
}

}  // namespace cqa
