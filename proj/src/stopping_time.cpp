#include "carleson/stopping_time.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace carleson {
namespace {

std::uint64_t pack_address(int depth, std::uint64_t index) {
  return (static_cast<std::uint64_t>(depth) << 32) | index;
}

}  // namespace

GenerationTree::GenerationTree(ConformalMap map, StoppingConfig config,
                               CircleArc root_arc)
    : map_(std::move(map)), config_(config), root_arc_(root_arc) {}

std::optional<std::size_t> GenerationTree::find_region(Complex z) const {
  const double r = std::abs(z);
  if (r >= 1.0) return std::nullopt;
  const double scale = root_arc_.length() / kTwoPi;
  const double gap = 1.0 - r;
  if (gap > scale) return std::nullopt;  // below the root box top band
  // Band of relative depth d covers gap in (scale 2^-d-1, scale 2^-d].
  int d = static_cast<int>(std::floor(std::log2(scale / gap)));
  if (d < 0) d = 0;
  while (d > 0 && gap > scale * std::ldexp(1.0, -d)) --d;
  while (d <= config_.max_depth && gap <= scale * std::ldexp(1.0, -(d + 1))) ++d;
  if (d > config_.max_depth) return std::nullopt;
  const double start = root_arc_.center_angle() - 0.5 * root_arc_.length();
  const double delta = normalize_angle(std::arg(z) - start);
  if (!root_arc_.is_full_circle() && delta >= root_arc_.length()) return std::nullopt;
  const std::uint64_t count = std::uint64_t{1} << d;
  const double width = root_arc_.length() / static_cast<double>(count);
  std::uint64_t index = static_cast<std::uint64_t>(std::floor(delta / width));
  if (index >= count) index = count - 1;
  const auto it = owner_.find(pack_address(d, index));
  if (it == owner_.end()) return std::nullopt;
  return it->second;
}

std::vector<double> GenerationTree::generation_arc_lengths() const {
  std::vector<double> lengths(generations_.size(), 0.0);
  for (std::size_t n = 0; n < generations_.size(); ++n) {
    for (std::size_t id : generations_[n]) {
      lengths[n] += regions_[id].root.box.arc_length();
    }
  }
  return lengths;
}

double GenerationTree::unresolved_area() const {
  double total = 0.0;
  for (const auto& region : regions_) total += region.unresolved_area;
  return total;
}

std::string GenerationTree::text_report() const {
  std::ostringstream out;
  out << "stopping tree: factor=" << config_.stopping_factor
      << " max_depth=" << config_.max_depth << " regions=" << regions_.size()
      << "\n";
  const std::vector<double> lengths = generation_arc_lengths();
  for (std::size_t n = 0; n < generations_.size(); ++n) {
    out << "generation " << n << ": regions=" << generations_[n].size()
        << " root_arc_length=" << lengths[n] << "\n";
  }
  out << "unresolved area=" << unresolved_area() << "\n";
  return out.str();
}

GenerationTree build_generations(const ConformalMap& map, const StoppingConfig& config,
                                 const CircleArc& root_arc) {
  if (!(config.stopping_factor > 1.0)) {
    throw std::invalid_argument("stopping tree: stopping_factor must exceed 1");
  }
  if (config.max_depth < 1 || config.max_depth > 16) {
    throw std::invalid_argument("stopping tree: max_depth must lie in [1, 16]");
  }
  if (config.top_samples < 4) {
    throw std::invalid_argument("stopping tree: top_samples must be >= 4");
  }
  GenerationTree tree(map, config, root_arc);
  const double threshold = std::log(config.stopping_factor);
  const auto value_at = [&](const CarlesonBox& box) {
    return map.log_abs_deriv(box.top().reference_point());
  };
  // Sampled sup over the box top of the drift from the region reference value.
  const auto top_drift = [&](const CarlesonBox& box, double root_value) {
    double sup = 0.0;
    for (Complex z : box.top().sample_grid(config.top_samples)) {
      sup = std::max(sup, std::abs(map.log_abs_deriv(z) - root_value));
    }
    return sup;
  };

  struct PendingRoot {
    AddressedBox box;
    int generation = 0;
    std::size_t parent = 0;
    bool has_parent = false;
  };
  std::deque<PendingRoot> pending;
  pending.push_back({{CarlesonBox(root_arc), 0, 0}, 0, 0, false});

  while (!pending.empty()) {
    const PendingRoot entry = pending.front();
    pending.pop_front();
    const std::size_t id = tree.regions_.size();
    tree.regions_.push_back(StoppingRegion{
        entry.generation, entry.box, value_at(entry.box.box), {}, {}, 0.0, 0.0});
    if (entry.has_parent) tree.regions_[entry.parent].children.push_back(id);
    if (static_cast<int>(tree.generations_.size()) <= entry.generation) {
      tree.generations_.resize(entry.generation + 1);
    }
    tree.generations_[entry.generation].push_back(id);

    std::vector<AddressedBox> stack{tree.regions_[id].root};
    while (!stack.empty()) {
      const AddressedBox current = stack.back();
      stack.pop_back();
      tree.owner_[pack_address(current.depth, current.index)] = id;
      tree.regions_[id].boxes.push_back(current);
      if (current.depth >= config.max_depth) {
        tree.regions_[id].unresolved_area +=
            current.box.area() - current.box.top().area();
        continue;
      }
      const AddressedBox kids[2] = {
          {current.box.left_child(), current.depth + 1, 2 * current.index},
          {current.box.right_child(), current.depth + 1, 2 * current.index + 1},
      };
      for (const AddressedBox& kid : kids) {
        const double drift = top_drift(kid.box, tree.regions_[id].root_value);
        if (drift >= threshold) {
          tree.regions_[id].stopped_arc_length += kid.box.arc_length();
          pending.push_back({kid, entry.generation + 1, id, true});
        } else {
          stack.push_back(kid);
        }
      }
    }
  }
  return tree;
}

GenerationTree build_generations(const ConformalMap& map,
                                 const StoppingConfig& config) {
  return build_generations(map, config, CircleArc(kPi, kTwoPi));
}

double region_oscillation(const GenerationTree& tree, std::size_t region_id,
                          int samples_per_top) {
  if (region_id >= tree.regions().size()) {
    throw std::out_of_range("region oscillation: bad region id");
  }
  const StoppingRegion& region = tree.regions()[region_id];
  const int samples =
      samples_per_top > 0 ? samples_per_top : tree.config().top_samples;
  double worst = 0.0;
  for (const AddressedBox& entry : region.boxes) {
    for (Complex z : entry.box.top().sample_grid(samples)) {
      worst = std::max(worst,
                       std::abs(tree.map().log_abs_deriv(z) - region.root_value));
    }
  }
  return worst;
}

double generation_decay(const GenerationTree& tree) {
  const std::vector<double> lengths = tree.generation_arc_lengths();
  double worst = 0.0;
  for (std::size_t n = 0; n + 1 < lengths.size(); ++n) {
    if (lengths[n] > 0.0) worst = std::max(worst, lengths[n + 1] / lengths[n]);
  }
  return worst;
}

PullbackResult pullback_via_regions(const GenerationTree& tree, const PlanarMeasure& mu,
                                    double exponent, double inversion_tol) {
  PullbackResult result;
  for (const auto& atom : as_atoms(mu)) {
    const InversionResult inv = invert_map(tree.map(), atom.point, inversion_tol);
    std::optional<std::size_t> region;
    if (inv.converged) region = tree.find_region(inv.z);
    if (!region) {
      result.rejected.push_back(atom);
      result.rejected_mass += atom.weight;
      continue;
    }
    if (std::abs(inv.z) > kNearBoundaryRadius) ++result.near_boundary_flags;
    const double scale =
        std::exp(exponent * tree.regions()[*region].root_value);
    result.measure.add(inv.z, atom.weight / scale);
  }
  return result;
}

}  // namespace carleson
