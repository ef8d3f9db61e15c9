#include "acyl/normal_form.hpp"

namespace acyl {

template struct SmithResult<Int>;
template SmithResult<Int> smith_normal_form<Int>(const MatZ&);
template MatZ hermite_basis<Int>(const MatZ&);
template MatZ integer_kernel<Int>(const MatZ&);
template Int determinant<Int>(const MatZ&);
template int rank<Int>(const MatZ&);

}  // namespace acyl
