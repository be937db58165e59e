#include "loewner/standard_fields.hpp"

namespace loewner {

HerglotzField autonomous_contraction(double horizon) {
  return HerglotzField::autonomous(0.0, HerglotzFunctionSpec::constant(1.0), horizon);
}

HerglotzField radial_constant(double horizon) {
  return radial_field(DrivingFunction::constant(1.0, horizon));
}

HerglotzField chordal_constant(double value, double horizon) {
  return chordal_field_halfplane(DrivingFunction::constant(value, horizon));
}

HerglotzField sample_general_field() {
  constexpr double kHorizon = 2.0;
  DrivingFunction tau({Segment::constant(0.0, 0.5, 0.2),
                       Segment::linear(0.5, kHorizon, 0.2, Complex(0.0, 0.2))});
  HerglotzFamily::DrivenAtom atom{
      DrivingFunction::constant(0.5, kHorizon),
      DrivingFunction::angular_from(DrivingFunction::linear(1.0, 2.0, kHorizon))};
  HerglotzFamily p = HerglotzFamily::driven({atom}, DrivingFunction::constant(0.5, kHorizon));
  return HerglotzField::general(tau, p);
}

}  // namespace loewner
