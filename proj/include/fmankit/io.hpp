#pragma once

#include <map>
#include <optional>
#include <string>

#include "fmankit/euler.hpp"
#include "fmankit/pde.hpp"
#include "fmankit/tangent_algebra.hpp"

namespace fmankit {

enum class Frame { Tilde, Abc, Gh };
std::string frame_name(Frame f);
const std::vector<std::string>& coefficient_names(Frame f);

struct TableDocument {
    int truncation = 8;
    Frame frame = Frame::Tilde;
    std::map<std::string, Series2> coefficients;  // every name of the frame

    MultTable table() const;              // FrameDegenerate for a gh frame with h2 not a unit
    std::optional<GhFrame> gh() const;    // set for gh frames
    static TableDocument from_table(const MultTable& t);
    static TableDocument from_gh(const GhFrame& gh);
};

// ParseError on malformed input, unknown keys, or entries outside the truncation.
TableDocument parse_table_document(const std::string& text);
std::string serialize(const TableDocument& doc);

// Series inside field documents are read at the parameter truncation and cut
// down wherever they meet a table.
VectorField parse_field_document(const std::string& text);
std::string serialize(const VectorField& E);

InitialData parse_pde_init(const std::string& text);
std::string serialize(const InitialData& init, int truncation);

std::string read_file(const std::string& path);  // ParseError when unreadable
void write_file(const std::string& path, const std::string& text);

}  // namespace fmankit
