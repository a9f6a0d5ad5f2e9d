# qmat package: exact algebra for quantized matrix algebras at roots of unity
