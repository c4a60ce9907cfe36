#pragma once

// Error taxonomy for the whole library.  Everything derives from
// std::runtime_error; the CLI maps these onto exit codes (input errors -> 2,
// resource caps -> 3, verification failures -> 1).

#include <stdexcept>
#include <string>

namespace tik {

// -- input / definition errors -------------------------------------------

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& m) : std::runtime_error("SchemaError: " + m) {}
};

struct NonComposablePath : std::runtime_error {
    explicit NonComposablePath(const std::string& m) : std::runtime_error("NonComposablePath: " + m) {}
};

struct NotFiniteDimensional : std::runtime_error {
    explicit NotFiniteDimensional(const std::string& m) : std::runtime_error("NotFiniteDimensional: " + m) {}
};

struct NonAdmissible : std::runtime_error {
    explicit NonAdmissible(const std::string& m) : std::runtime_error("NonAdmissible: " + m) {}
};

// -- resource caps ---------------------------------------------------------

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& m) : std::runtime_error("CapExceeded: " + m) {}
};

struct TooManyIndecs : std::runtime_error {
    explicit TooManyIndecs(const std::string& m) : std::runtime_error("TooManyIndecs: " + m) {}
};

// -- module-category engine ------------------------------------------------

struct UnknownSummand : std::runtime_error {
    explicit UnknownSummand(const std::string& m) : std::runtime_error("UnknownSummand: " + m) {}
};

// -- lattice / subcategory layer --------------------------------------------

struct NotWide : std::runtime_error {
    explicit NotWide(const std::string& m) : std::runtime_error("NotWide: " + m) {}
};

// The next four signal *internal inconsistencies*: a theorem the engine relies
// on failed to hold on concrete data.  They must never be caught and ignored.

struct NoBrick : std::runtime_error {
    explicit NoBrick(const std::string& m) : std::runtime_error("NoBrick: " + m) {}
};

struct MultipleBricks : std::runtime_error {
    explicit MultipleBricks(const std::string& m) : std::runtime_error("MultipleBricks: " + m) {}
};

struct NotEnoughProjectives : std::runtime_error {
    explicit NotEnoughProjectives(const std::string& m) : std::runtime_error("NotEnoughProjectives: " + m) {}
};

struct CriteriaDisagree : std::runtime_error {
    explicit CriteriaDisagree(const std::string& m) : std::runtime_error("CriteriaDisagree: " + m) {}
};

struct BijectionViolation : std::runtime_error {
    explicit BijectionViolation(const std::string& m) : std::runtime_error("BijectionViolation: " + m) {}
};

struct TheoremViolation : std::runtime_error {
    explicit TheoremViolation(const std::string& m) : std::runtime_error("TheoremViolation: " + m) {}
};

// -- mutation ---------------------------------------------------------------

struct NotHereditary : std::runtime_error {
    explicit NotHereditary(const std::string& m) : std::runtime_error("NotHereditary: " + m) {}
};

struct NotASummand : std::runtime_error {
    explicit NotASummand(const std::string& m) : std::runtime_error("NotASummand: " + m) {}
};

struct RigidRequiresHereditary : std::runtime_error {
    explicit RigidRequiresHereditary(const std::string& m)
        : std::runtime_error("RigidRequiresHereditary: " + m) {}
};

} // namespace tik
