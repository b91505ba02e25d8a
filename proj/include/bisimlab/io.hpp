#pragma once

// JSON interchange ("schema":"bisimlab/1") and DOT export. Malformed input
// raises a data error naming the offending JSON path.

#include "bisimlab/mlts.hpp"
#include "bisimlab/reduction.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace bisimlab
{

using Json = nlohmann::json;

inline const std::string schema_version = "bisimlab/1";

/// Parses text; a data error on syntax errors.
Json parse_json_text( const std::string& text, const std::string& what );
Json read_json_file( const std::string& path );

/// {"atoms":[{"fin":3},{"omega":true},{"omegaStar":true}]}; a descriptor
/// string is accepted as well.
Json descriptor_to_json( const OrderDescriptor& d );
OrderDescriptor descriptor_from_json( const Json& j );

/// {"nodes":[[],[0],[1,0],…]}
Json tree_to_json( const FiniteTree& t );
FiniteTree tree_from_json( const Json& j );

/// {"states":[…],"labels":[…],"transitions":{"l":[["s0","s1"],…]}}
Json lts_to_json( const Lts& l );
Lts lts_from_json( const Json& j );

/// {"carrier":[…],"field":[[…],…],"trans":{"l":{"s":["t",…]}}}. "field"
/// lists either the atoms or every member; when omitted it is the powerset.
Json mlts_to_json( const FiniteMlts& m );
FiniteMlts mlts_from_json( const Json& j );

/// {"pairs":[["s","t"],…]} and/or {"classes":[["s","t",…],…]}.
StateRelation relation_from_json( const FiniteMlts& m, const Json& j );
Json relation_to_json( const FiniteMlts& m, const StateRelation& r );
/// {"field":[[…],…]} with the same conventions as the MLTS field.
Field field_from_json( const FiniteMlts& m, const Json& j );
Json field_to_json( const FiniteMlts& m, const Field& f );

/// A list of entries, or an object with an "entries" list. Entries are
/// {"descriptor": "3+w*" | {"atoms":…}, "note": "…"}.
std::vector<CatalogEntry> catalog_from_json( const Json& j );
Json catalog_to_json( const std::vector<CatalogEntry>& entries );

Json verdict_to_json( const Verdict& v );
Json entry_report_to_json( const EntryReport& e );
Json report_to_json( const Report& r );

/// Nodes and edges in lexicographic order of their ids; edge labels shown.
void export_dot( const Lts& l, std::ostream& out );
void export_dot( const FiniteTree& t, std::ostream& out );
/// Data error unless the materialization is exhaustive.
void export_dot( const TreeLts& t, std::ostream& out );

} // namespace bisimlab
