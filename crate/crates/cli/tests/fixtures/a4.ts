ts a4
initial s0
arc s0 a s1
arc s1 a s2
arc s2 a s3
