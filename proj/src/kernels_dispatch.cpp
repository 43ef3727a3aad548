// Runtime kernel selection: AVX2 when compiled in and the CPU reports it,
// otherwise the scalar reference. VARMULT_KERNELS={auto,scalar,avx2} overrides.
#include "varmult/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace varmult::kernels {

#if defined(VARMULT_BUILD_AVX2)
const Impl& avx2_impl(); // defined in kernels_avx2.cpp
#endif

namespace {

bool avx2_usable() {
#if defined(VARMULT_BUILD_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const Impl* resolve(std::string_view name) {
    if (name == "scalar") return &scalar_impl();
#if defined(VARMULT_BUILD_AVX2)
    if (name == "avx2" && avx2_usable()) return &avx2_impl();
#endif
    return nullptr;
}

const Impl* initial_choice() {
    if (const char* env = std::getenv("VARMULT_KERNELS")) {
        std::string_view request(env);
        if (!request.empty() && request != "auto") {
            if (const Impl* impl = resolve(request)) return impl;
            throw std::invalid_argument(
                std::string("kernels: VARMULT_KERNELS requests unavailable implementation '") +
                std::string(request) + "'");
        }
    }
    if (avx2_usable()) {
#if defined(VARMULT_BUILD_AVX2)
        return &avx2_impl();
#endif
    }
    return &scalar_impl();
}

const Impl*& active_slot() {
    static const Impl* slot = initial_choice();
    return slot;
}

} // namespace

const Impl& active() { return *active_slot(); }

std::vector<const Impl*> available() {
    std::vector<const Impl*> out;
    out.push_back(&scalar_impl());
#if defined(VARMULT_BUILD_AVX2)
    if (avx2_usable()) out.push_back(&avx2_impl());
#endif
    return out;
}

const Impl* find(std::string_view name) { return resolve(name); }

void set_active(std::string_view name) {
    const Impl* impl = resolve(name);
    if (impl == nullptr) {
        throw std::invalid_argument("kernels::set_active: unknown or unusable implementation '" +
                                    std::string(name) + "'");
    }
    active_slot() = impl;
}

} // namespace varmult::kernels
