#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "carleson/conformal_maps.hpp"
#include "carleson/disc_geometry.hpp"
#include "carleson/measures.hpp"

namespace carleson {

// Stopping rule for log|phi'|: a descendant box J of a generation root I is
// stopped, and seeds the next generation, as soon as the sampled sup over its
// top of |log|phi'| - log|phi'(z_I)|| reaches log(stopping_factor).
struct StoppingConfig {
  double stopping_factor = 2.718281828459045;
  int max_depth = 12;   // subdivision depth relative to the tree root, <= 16
  int top_samples = 32; // sample budget per box top for the stopping sup
};

struct AddressedBox {
  CarlesonBox box;
  int depth = 0;            // relative to the tree root
  std::uint64_t index = 0;  // binary position among the depth-d descendants
};

// One stopping region: the set of boxes between a generation root and its
// stopped children.  The region itself is the disjoint union of the box tops.
struct StoppingRegion {
  int generation = 0;
  AddressedBox root;
  double root_value = 0.0;  // log|phi'| at the root top reference point
  std::vector<AddressedBox> boxes;
  std::vector<std::size_t> children;   // ids of regions stopped inside this one
  double stopped_arc_length = 0.0;  // total arc length of stopped children
  double unresolved_area = 0.0;     // area below the tops cut off at max_depth
};

class GenerationTree {
 public:
  const std::vector<StoppingRegion>& regions() const { return regions_; }
  const std::vector<std::vector<std::size_t>>& generations() const {
    return generations_;
  }
  const ConformalMap& map() const { return map_; }
  const StoppingConfig& config() const { return config_; }
  const CircleArc& root_arc() const { return root_arc_; }

  // Region owning the unique box top containing z, when z is resolved.
  std::optional<std::size_t> find_region(Complex z) const;

  // Sum of root arc lengths per generation.
  std::vector<double> generation_arc_lengths() const;

  // Area of the root box not covered by any region top: the union of the
  // child boxes cut off at max_depth.  Region top areas plus this equal the
  // root box area.
  double unresolved_area() const;

  std::string text_report() const;

 private:
  GenerationTree(ConformalMap map, StoppingConfig config, CircleArc root_arc);
  friend GenerationTree build_generations(const ConformalMap&, const StoppingConfig&,
                                          const CircleArc&);

  ConformalMap map_;
  StoppingConfig config_;
  CircleArc root_arc_;
  std::vector<StoppingRegion> regions_;
  std::vector<std::vector<std::size_t>> generations_;
  std::unordered_map<std::uint64_t, std::size_t> owner_;  // (depth, index) -> region
};

GenerationTree build_generations(const ConformalMap& map, const StoppingConfig& config,
                                 const CircleArc& root_arc);
GenerationTree build_generations(const ConformalMap& map, const StoppingConfig& config);

// Max over the region's box tops, over a fresh sample grid, of
// |log|phi'| - root_value|.  samples_per_top = 0 uses config.top_samples.
double region_oscillation(const GenerationTree& tree, std::size_t region_id,
                          int samples_per_top = 0);

// Max over consecutive generations of arc_length[n+1] / arc_length[n];
// 0 when the tree stops after generation 0.
double generation_decay(const GenerationTree& tree);

// Weighted pullback with the derivative factor frozen per region: an atom
// whose preimage lands in the region of root I is divided by
// |phi'(z_I)|^exponent.  Atoms whose preimage is unresolved or outside the
// tree root are rejected.
PullbackResult pullback_via_regions(const GenerationTree& tree, const PlanarMeasure& mu,
                                    double exponent,
                                    double inversion_tol = kInversionTolerance);

}  // namespace carleson
