#include "elastica/errors.hpp"
