// JSON serialization of the external file formats: maps, presentations,
// frames, reports. Key order is fixed so identical inputs give identical
// bytes.
#pragma once

#include "perpdec/groups.hpp"
#include "perpdec/oracle.hpp"

#include "json.hpp"

namespace perpdec {

using ojson = nlohmann::ordered_json;

ojson map_to_json(const BilinearMap& b);
BilinearMap map_from_json(const ojson& j);

ojson presentation_to_json(const GroupPresentation& pres);
GroupPresentation presentation_from_json(const ojson& j);

ojson frame_to_json(const StarStructure& s, const Frame& f);
Frame frame_from_json(const ojson& j, const BilinearMap& b);

ojson report_to_json(const StructureReport& r);
ojson invariants_to_json(const InvariantsReport& r);
ojson decomposition_to_json(const CentralDecomposition& d);
CentralDecomposition decomposition_from_json(const ojson& j, i64 p);
ojson orbit_report_to_json(const OrbitReport& r);
ojson matrix_to_json(const Mat& m);
Mat matrix_from_json(const ojson& j, i64 p);

std::string render_table(const ojson& j);  // indented key: value lines

}  // namespace perpdec
