#pragma once

#include <cstddef>

namespace bsq {

/// Uniform sampling of a frequency axis: nodes xi_min + k * spacing, k = 0 .. n_nodes - 1.
class FrequencyGrid {
public:
    FrequencyGrid(double xi_min, double xi_max, std::size_t n_nodes);

    /// Grid with given first node, spacing and node count (xi_max derived).
    static FrequencyGrid from_spacing(double xi_min, double spacing, std::size_t n_nodes);

    /// Grid whose nodes are exactly (offset + k) * spacing.
    static FrequencyGrid on_lattice(double offset, double spacing, std::size_t n_nodes);

    double xi_min() const noexcept { return xi_min_; }
    double xi_max() const noexcept { return xi_max_; }
    std::size_t size() const noexcept { return n_nodes_; }
    double spacing() const noexcept { return spacing_; }
    /// Nodes are (offset + k) * spacing; lattice-aligned grids therefore hit zero exactly.
    double node(std::size_t k) const noexcept { return (offset_ + static_cast<double>(k)) * spacing_; }

    /// Symmetric grids have xi_min = -xi_max and a node at zero.
    bool symmetric() const noexcept;

    /// Offset of the first node measured in spacings (xi_min / spacing).
    double lattice_offset() const noexcept { return offset_; }

    bool same_as(const FrequencyGrid& other, double rel_tol = 1e-12) const noexcept;

private:
    double xi_min_;
    double xi_max_;
    std::size_t n_nodes_;
    double spacing_;
    double offset_;
};

/// Grid on [-half_width, half_width] with an odd number of nodes (node at zero).
FrequencyGrid make_symmetric_grid(double half_width, std::size_t n_nodes);

/// Product grid (tau, xi) for space-time Fourier fields.
struct SpaceTimeGrid {
    FrequencyGrid tau_axis;
    FrequencyGrid xi_axis;

    bool same_as(const SpaceTimeGrid& other) const noexcept {
        return tau_axis.same_as(other.tau_axis) && xi_axis.same_as(other.xi_axis);
    }
};

}  // namespace bsq
