// Text format for explicit hypothesis classes.
//
//   points=<n> labels=<k> hyps=<h>
//   <row 1: n whitespace-separated label tokens>
//   ...
//   <row h>
//
// Set labels are written as "{1,2,3}" (sorted, no spaces), everything else is
// an atom token. k counts the distinct label tokens appearing in the rows;
// readers intern tokens in order of first appearance. Blank lines and lines
// starting with '#' are ignored.

#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "mcpac/core.hpp"

namespace mcpac {

std::shared_ptr<ExplicitClass> read_class(std::istream& in);
std::shared_ptr<ExplicitClass> read_class_file(const std::string& path);

// Interning variant: labels are interned into the given space so hypotheses
// from several files can be compared. Reader validation is unchanged.
std::shared_ptr<ExplicitClass> read_class(std::istream& in,
                                          std::shared_ptr<LabelSpace> space);

void write_class(const ExplicitClass& cls, std::ostream& out);
void write_class_file(const ExplicitClass& cls, const std::string& path);

}  // namespace mcpac
