#include "bmetro/error.hpp"

namespace bmetro {

void throw_invalid(const std::string& what) { throw Error(Error::Kind::invalid_argument, what); }
void throw_infeasible(const std::string& what) { throw Error(Error::Kind::infeasible, what); }
void throw_numerical(const std::string& what) { throw Error(Error::Kind::numerical, what); }

}  // namespace bmetro
