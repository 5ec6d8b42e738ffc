#include "mdsym/series.hpp"

namespace mdsym {

template class TruncSeries<Rational>;
template class TruncSeries<Complex>;

}  // namespace mdsym
