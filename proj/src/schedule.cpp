#include "infobound/schedule.hpp"

#include <cmath>
#include <stdexcept>

#include "infobound/errors.hpp"

namespace infobound {

std::string to_string(ScheduleKind kind) {
    return kind == ScheduleKind::constant ? "constant" : "inverse_square";
}

ScheduleKind schedule_kind_from_string(const std::string& s) {
    if (s == "constant") return ScheduleKind::constant;
    if (s == "inverse_square") return ScheduleKind::inverse_square;
    throw ConfigError("unknown schedule kind: " + s);
}

Schedule Schedule::constant(double lr, double noise) {
    if (!(lr > 0.0)) throw std::invalid_argument("constant schedule: lr must be positive");
    if (noise < 0.0) throw std::invalid_argument("constant schedule: noise must be >= 0");
    return {ScheduleKind::constant, lr, noise};
}

Schedule Schedule::inverse_square(double C) {
    if (!(C > 0.0)) throw std::invalid_argument("inverse_square schedule: C must be positive");
    return {ScheduleKind::inverse_square, C, 0.0};
}

ScheduleValue schedule_at(const Schedule& schedule, std::uint64_t t) {
    if (t == 0) throw std::invalid_argument("schedule_at: iterations start at t = 1");
    if (schedule.kind == ScheduleKind::constant) return {schedule.c, schedule.c_noise};
    double td = static_cast<double>(t);
    return {schedule.c / (td * td), std::sqrt(schedule.c) / td};
}

}  // namespace infobound
