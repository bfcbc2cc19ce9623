#ifndef RISPACES_CONFIG_HPP
#define RISPACES_CONFIG_HPP

namespace rispaces {

// Refinement-depth cap for the numeric layers, overridable through the
// RISPACES_MAX_DEPTH environment variable.
long max_refinement_depth();

} // namespace rispaces

#endif
