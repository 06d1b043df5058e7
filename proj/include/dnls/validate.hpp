#pragma once
namespace dnls {}
