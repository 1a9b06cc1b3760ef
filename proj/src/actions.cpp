#include "leopack/actions.hpp"

namespace leopack {

const char* arm_name(ArmId a) { return a == ArmId::Left ? "L" : "R"; }

const char* primitive_name(ActionPrimitive a) {
    switch (a) {
        case ActionPrimitive::Hover: return "Hover";
        case ActionPrimitive::Approach: return "Approach";
        case ActionPrimitive::Fix: return "Fix";
        case ActionPrimitive::Leave: return "Leave";
        case ActionPrimitive::Reset: return "Reset";
    }
    return "?";
}

const char* gripper_name(GripperAction g) {
    return g == GripperAction::Close ? "Close" : "Open";
}

}  // namespace leopack
