#include "e6crit/types.hpp"

namespace e6crit {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::PrecisionUnreachable: return "precision-unreachable";
        case ErrorKind::InvalidUse: return "invalid-use";
        case ErrorKind::BoundaryZero: return "boundary-zero";
        case ErrorKind::NonIntegral: return "non-integral";
        case ErrorKind::NoConvergence: return "no-convergence";
        case ErrorKind::RootCollision: return "root-collision";
        case ErrorKind::Membership: return "membership";
        case ErrorKind::ContinuationStall: return "continuation-stall";
        case ErrorKind::BranchJump: return "branch-jump";
        case ErrorKind::LatticePoint: return "lattice-point";
        case ErrorKind::G2TooSmall: return "g2-too-small";
        case ErrorKind::PathTooClose: return "path-too-close";
        case ErrorKind::Stiffness: return "stiffness";
    }
    return "unknown";
}

const char* to_string(Half h) noexcept {
    switch (h) {
        case Half::Left: return "left";
        case Half::On: return "on";
        case Half::Right: return "right";
    }
    return "?";
}

}  // namespace e6crit
