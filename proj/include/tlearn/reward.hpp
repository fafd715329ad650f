#pragma once

namespace tlearn {

// Broadcast third factor, one value per step.
enum class Reward : int { punishment = -1, none = 0, reward = 1 };

}  // namespace tlearn
