#include "nevbound/parallel.hpp"

#include <cstdlib>
#include <string>

namespace nevbound {

std::size_t worker_count() {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NEVBOUND_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return std::min<std::size_t>(static_cast<std::size_t>(v), hw);
        } catch (const std::exception&) {
        }
    }
    return hw;
}

}  // namespace nevbound
