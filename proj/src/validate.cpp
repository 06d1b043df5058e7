#include "dnls/validate.hpp"
