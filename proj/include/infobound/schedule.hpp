#pragma once

#include <cstdint>
#include <string>

namespace infobound {

enum class ScheduleKind { constant, inverse_square };

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(const std::string& s);

struct ScheduleValue {
    double lr = 0.0;
    double noise = 0.0;
};

// Learning-rate / noise-scale schedule.
//   constant:       lr = c, noise = c_noise for every t
//   inverse_square: lr = C/t^2, noise = sqrt(C)/t  (so lr^2/noise^2 = C/t^2)
struct Schedule {
    ScheduleKind kind = ScheduleKind::constant;
    double c = 0.0;        // constant lr, or C for inverse_square
    double c_noise = 0.0;  // constant noise scale (unused by inverse_square)

    static Schedule constant(double lr, double noise);
    static Schedule inverse_square(double C);
};

// Evaluates the schedule at iteration t >= 1; t = 0 is an error.
ScheduleValue schedule_at(const Schedule& schedule, std::uint64_t t);

}  // namespace infobound
