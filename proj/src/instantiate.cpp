// Full class instantiations for both backends, so every member compiles once in the library.

#include "mopkit/smith.hpp"
#include "mopkit/stieltjes.hpp"
#include "mopkit/uvarov.hpp"

namespace mopkit {

template class Poly<Rational>;
template class Poly<BigFloat>;
template class MatPoly<Rational>;
template class MatPoly<BigFloat>;
template class MatrixMeasure<Rational>;
template class MatrixMeasure<BigFloat>;
template class StandardEngine<Rational>;
template class StandardEngine<BigFloat>;
template class DualEngine<Rational>;
template class DualEngine<BigFloat>;

}  // namespace mopkit
