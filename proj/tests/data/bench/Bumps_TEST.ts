# synthetic three-class bumps
@problemName Bumps
@timeStamps false
@missing false
@univariate false
@dimensions 2
@equalLength true
@seriesLength 10
@classLabel true early late flat
@data
0.21,0.27,2.63,3.0,3.02,-0.03,0.18,-0.28,-0.41,-0.17:-0.74,0.74,0.38,-0.1,-0.93,-1.08,1.35,0.24,-0.95,-2.11:early
-0.41,0.74,-0.34,-0.02,0.06,-0.05,2.92,2.59,2.68,0.51:-0.94,1.46,-2.08,-0.74,-0.19,0.89,-0.0,0.33,-0.23,0.91:late
-0.27,0.01,0.61,-0.06,-0.11,0.17,-0.15,0.01,0.17,0.44:1.87,1.93,2.87,1.76,-1.02,0.75,-1.09,0.73,-0.39,0.29:flat
0.53,0.16,-0.51,3.08,3.33,3.13,-0.28,-0.08,0.27,0.36:-1.24,-0.86,0.35,1.44,-1.64,0.44,0.51,0.38,1.68,0.4:early
0.38,-0.23,-0.38,0.41,0.09,-0.38,2.99,3.25,2.77,0.12:-1.2,-0.53,1.01,-0.6,-1.85,-0.26,0.16,-1.03,-0.34,-0.96:late
0.41,0.19,-0.79,-0.53,-0.09,-0.15,0.05,-0.38,0.29,0.17:1.11,-0.86,-0.12,0.06,-1.43,-2.57,0.44,-0.54,0.82,0.78:flat
