#include "bergman/disk.hpp"

namespace bergman {

Complex mobius(DiskPoint z, DiskPoint w) {
    return (z.value() - w.value()) / (1.0 - std::conj(z.value()) * w.value());
}

Complex mobius_derivative(DiskPoint z, DiskPoint w) {
    const Complex d = 1.0 - std::conj(z.value()) * w.value();
    return (z.abs2() - 1.0) / (d * d);
}

Complex kernel(DiskPoint z, DiskPoint w) {
    const Complex d = 1.0 - std::conj(z.value()) * w.value();
    return 1.0 / (d * d);
}

Complex normalized_kernel(DiskPoint z, DiskPoint w) {
    const Complex d = 1.0 - std::conj(z.value()) * w.value();
    return (1.0 - z.abs2()) / (d * d);
}

}  // namespace bergman
