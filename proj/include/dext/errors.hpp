#pragma once
// Error types shared by all modules. Each carries a stable kind string so the
// CLI can map failures onto exit codes without parsing messages.

#include <stdexcept>
#include <string>

namespace dext {

class DextError : public std::runtime_error {
public:
    DextError(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }
    // Internal invariant violations (engine bugs) map to CLI exit code 3.
    virtual bool is_internal() const { return false; }

private:
    std::string kind_;
};

class InternalError : public DextError {
public:
    InternalError(std::string kind, const std::string& msg) : DextError(std::move(kind), msg) {}
    bool is_internal() const override { return true; }
};

#define DEXT_DEFINE_ERROR(Name, Base)                                        \
    class Name : public Base {                                               \
    public:                                                                  \
        explicit Name(const std::string& msg) : Base(#Name, msg) {}          \
    };

DEXT_DEFINE_ERROR(FieldMismatch, DextError)
DEXT_DEFINE_ERROR(DimensionError, DextError)
DEXT_DEFINE_ERROR(NotClosed, DextError)
DEXT_DEFINE_ERROR(ParseError, DextError)
DEXT_DEFINE_ERROR(NotStabilized, DextError)
DEXT_DEFINE_ERROR(ScanWindowExceeded, DextError)
DEXT_DEFINE_ERROR(WindowTooSmall, DextError)
DEXT_DEFINE_ERROR(WindowTooDeep, DextError)
DEXT_DEFINE_ERROR(ShapeError, DextError)
DEXT_DEFINE_ERROR(NotClusterTilting, DextError)
DEXT_DEFINE_ERROR(UnknownObject, DextError)
DEXT_DEFINE_ERROR(SplicingFailure, InternalError)
DEXT_DEFINE_ERROR(EquivalenceViolation, InternalError)
DEXT_DEFINE_ERROR(CharacterizationMismatch, InternalError)
DEXT_DEFINE_ERROR(InvariantViolation, InternalError)

#undef DEXT_DEFINE_ERROR

// Throws InvariantViolation when `cond` is false.
inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvariantViolation(what);
}

}  // namespace dext
