#include "l0lms/algorithms/attractor.hpp"

#include "l0lms/error.hpp"

namespace l0lms::algorithms {

double attractor(Variant variant, double t, const AlgoParams& params) {
  switch (variant) {
    case Variant::l0lms: return l0_attractor(t, params.alpha);
    case Variant::zalms: return za_attractor(t);
    case Variant::rzalms: return rza_attractor(t, params.epsilon);
    case Variant::lms: break;
  }
  throw PreconditionError("no attractor for plain LMS");
}

}  // namespace l0lms::algorithms
