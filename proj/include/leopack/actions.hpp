#pragma once

namespace leopack {

enum class ArmId { Left, Right };

inline ArmId other_arm(ArmId a) {
    return a == ArmId::Left ? ArmId::Right : ArmId::Left;
}
const char* arm_name(ArmId a);  // "L" / "R"

// a1..a5
enum class ActionPrimitive { Hover, Approach, Fix, Leave, Reset };
const char* primitive_name(ActionPrimitive a);

// g1 = Close (flag 1), g2 = Open (flag 0)
enum class GripperAction { Open, Close };
const char* gripper_name(GripperAction g);

// One robot movement m(R, G, A).
struct Movement {
    ArmId role;
    GripperAction gripper;
    ActionPrimitive primitive;
};

}  // namespace leopack
