#pragma once

// Symbolic toric schemes over a base ring known only through its
// properties: chart presentations, gluing data and the property report.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

enum class Tri { False, True, Unknown };

std::string tri_name(Tri t);
Tri tri_and(Tri a, Tri b);

struct RingDescriptor {
  std::string name = "R";
  Tri is_field = Tri::Unknown;
  Tri is_noetherian = Tri::Unknown;
  Tri is_regular = Tri::Unknown;
  Tri is_integral = Tri::Unknown;
  Tri is_integrally_closed = Tri::Unknown;

  /// A field is noetherian, regular, integral and integrally closed.
  RingDescriptor normalized() const;

  static RingDescriptor field(std::string name = "k");
};

/// Generators and relations of the monoid algebra R[P-check].
struct ChartPresentation {
  std::size_t cone_index = 0;
  std::vector<IntVector> monoid_generators;  // pointed dual Hilbert basis, then +-u per unit basis vector u
  std::vector<bool> invertible;
  Eigen::Index units_rank = 0;
  IntSublattice relation_lattice;  // integer relations among monoid_generators
};

ChartPresentation chart_presentation(const Fan& f, std::size_t i);

/// The chart of the common face is the basic open subset of each side's
/// chart where m_i (resp. m_j) is inverted.
struct GluingDatum {
  std::size_t i = 0, j = 0;
  std::size_t common_face = 0;
  IntVector m_i, m_j;
};

GluingDatum gluing_datum(const Fan& f, std::size_t i, std::size_t j);
/// One datum per unordered pair i < j.
std::vector<GluingDatum> gluing_data(const Fan& f);

bool is_smooth_cone(const ConvexCone& p);

struct SchemeReport {
  bool separated = true;
  bool quasi_compact = true;
  Tri noetherian = Tri::Unknown;
  bool proper = false;
  bool complete_fan = false;
  bool finite_fan = true;
  std::optional<Eigen::Index> dimension;
  std::vector<bool> smooth;  // per cone
  Tri regular = Tri::Unknown;
  Tri log_regular = Tri::Unknown;
  Tri integral = Tri::Unknown;
  Tri normal = Tri::Unknown;
  std::map<std::string, std::string> notes;  // justification per field
};

SchemeReport scheme_report(const Fan& f, const RingDescriptor& r);

}  // namespace toric
