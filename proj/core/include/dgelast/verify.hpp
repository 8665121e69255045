#ifndef DGELAST_VERIFY_HPP
#define DGELAST_VERIFY_HPP

#include <iosfwd>

namespace dgelast {

/// Runs the built-in invariant suite (quadrature exactness, nodal basis,
/// mesh integrity, method identities, patch test, manufactured-solution
/// consistency) and prints one line per check. Returns the number of failed
/// checks.
int run_verification(std::ostream& os);

} // namespace dgelast

#endif
