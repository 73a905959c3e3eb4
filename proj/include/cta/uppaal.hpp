// uppaal.hpp — one-way export to the UPPAAL 4.x nta XML dialect
#pragma once

#include <stdexcept>
#include <string>

#include "cta/model.hpp"

namespace cta {

class UppaalExportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Renders the model as an <nta> document: channels and variables in the
/// global declaration, clocks per template, one template per automaton,
/// every template instantiated once. Throws when an identifier collides
/// with an UPPAAL reserved word.
std::string export_uppaal(const SystemModel& model);

}  // namespace cta
