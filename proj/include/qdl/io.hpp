#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qdl/group.hpp"
#include "qdl/hopf.hpp"
#include "qdl/lattice.hpp"
#include "qdl/sparse.hpp"

namespace qdl {

using Json = nlohmann::json;

// {"kind":"cyclic","n":N} | {"kind":"s3"} | {"kind":"table","mul":[[..]],"irreps":[..]}
GroupTable group_from_json(const Json& j);
Json group_to_json(const GroupTable& G);
// Short names used on the command line: z<N>, s3.
GroupTable group_from_name(const std::string& name);

// {"topology":"torus"|"plane","width":W,"height":H}
Lattice lattice_from_json(const Json& j);
// "3x3" style dimensions
Lattice lattice_from_arg(Topology topo, const std::string& dims);

// {"v":[x,y],"p":[x,y]}
Site site_from_json(const Lattice& L, const Json& j);
Json site_to_json(const Lattice& L, const Site& s);

// Either {"sites":[site,...]} or {"triangles":[{"kind","edge":[x,y,"h"|"v"],"from","to"},...]}.
Ribbon ribbon_from_json(const Lattice& L, const Json& j);
Json ribbon_to_json(const Lattice& L, const Ribbon& r);

// Complex numbers travel as [re, im] pairs.
Complex complex_from_json(const Json& j);
Json complex_to_json(Complex z);
CMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);

// {"kind":"group","group":G} | {"kind":"function","group":G} | {"kind":"sweedler"} |
// {"kind":"tensors","dim":d,"mul":[c][a][b],"com":[a][b][c],"unit":[..],"counit":[..],"antipode":[[..]]}
// where G is a group spec or a short name. The result is validated by load_hopf.
HopfAlgebra hopf_from_json(const Json& j);
Json hopf_to_json(const HopfAlgebra& H);

// Text dump: one JSON metadata line, then "key re im" per entry with the key in hex.
void write_state(std::ostream& os, const SparseState& s, const Json& meta = Json::object());
SparseState read_state(std::istream& is, const GroupTable& G, Json* meta = nullptr);

}  // namespace qdl
