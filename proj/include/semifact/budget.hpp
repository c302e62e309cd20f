#pragma once

#include <cstddef>

namespace semifact {

// Process-wide cap on bytes held by enumeration results; 0 disables it.
// Initialized from SEMIFACT_MAX_MEM on first use.
void set_memory_cap(std::size_t bytes);
std::size_t memory_cap();

// Accounts for a stored result; throws ResourceExhausted past the cap.
void charge(std::size_t bytes);
void reset_charges();

}  // namespace semifact
