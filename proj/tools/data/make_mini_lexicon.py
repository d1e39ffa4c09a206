#!/usr/bin/env python3
"""Writes data/lexicon/mini_sentiwordnet.tsv in the public six-column layout.

Rows are (pos, synset id, PosScore, NegScore, terms, gloss). The values are
hand-curated for the bundled fixtures; the file is committed, this script only
documents how it was laid out.
"""
import sys

ROWS = [
    # evaluative adjectives used by the fixture captions
    ("a", 1125429, 0, 0.625, "bad#1", "having undesirable or negative qualities"),
    ("a", 1126291, 0, 0.5, "bad#2 big#4", "very intense"),
    ("a", 1123148, 0.75, 0, "good#1", "having desirable or positive qualities"),
    ("a", 1166413, 0.5, 0, "good#2 unspoiled#1", "not left to spoil"),
    ("n", 4849241, 0.625, 0, "good#2 goodness#1", "moral excellence or admirableness"),
    ("a", 2229257, 0, 0.125, "rainy#1", "marked by rain"),
    ("a", 218950, 0, 0.75, "ugly#1", "displeasing to the senses"),
    ("a", 217728, 0.75, 0, "beautiful#1", "delighting the senses"),
    ("a", 419289, 0, 0.625, "dirty#1 soiled#1 unclean#1", "soiled or likely to soil"),
    ("a", 417581, 0.5, 0, "clean#1", "free from dirt or impurities"),
    ("a", 1493016, 0, 0.5, "messy#1 untidy#2", "dirty and disorderly"),
    ("a", 1491994, 0.375, 0, "neat#1 tidy#2", "clean or organized"),
    ("a", 1377871, 0, 0.625, "broken#1", "physically and forcibly separated into pieces"),
    ("a", 1378186, 0.25, 0, "unbroken#1", "not broken"),
    ("a", 1638438, 0, 0.125, "old#1", "of long duration; not new"),
    ("a", 1687167, 0, 0.25, "old#2", "belonging to an earlier time"),
    ("a", 1640850, 0.25, 0, "new#1", "not of long duration; having just come into being"),
    ("a", 1646941, 0.125, 0, "young#1", "being in its early stage"),
    ("a", 273082, 0, 0.5, "dark#1", "devoid of or deficient in light or brightness"),
    ("a", 271554, 0.25, 0, "light#1", "characterized by or emitting light"),
    ("a", 1361863, 0, 0.75, "sad#1", "experiencing or showing sorrow or unhappiness"),
    ("a", 1367211, 0.75, 0, "glad#1", "showing or causing joy and pleasure"),
    ("a", 1148283, 0.875, 0, "happy#1", "enjoying or showing or marked by joy or pleasure"),
    ("a", 1149494, 0, 0.75, "unhappy#1", "experiencing or marked by or causing sadness"),
    ("a", 2547317, 0, 0.25, "wet#1", "covered or soaked with a liquid such as water"),
    ("a", 2551380, 0.125, 0, "dry#1", "free from liquid or moisture"),
    ("a", 2022167, 0, 0.625, "poor#1", "having little money or few possessions"),
    ("a", 2021905, 0.5, 0, "rich#1", "possessing material wealth"),
    ("a", 1251128, 0, 0.5, "cold#1", "having a low or inadequate temperature"),
    ("a", 1247240, 0.125, 0.125, "hot#1", "used of physical heat"),
    ("a", 2058794, 0, 0.625, "dangerous#1 unsafe#1", "involving or causing danger"),
    ("a", 2057829, 0.5, 0, "safe#1", "free from danger or the risk of harm"),
    ("a", 1345307, 0, 0.625, "boring#1 deadening#1 tedious#1", "so lacking in interest as to cause weariness"),
    ("a", 1343918, 0.625, 0, "interesting#1", "arousing or holding the attention"),
    ("a", 1126841, 0, 0.875, "terrible#1 awful#2 dreadful#2", "exceptionally bad or displeasing"),
    ("a", 1050088, 0, 0.625, "lonely#1 lonesome#1", "lacking companions or companionship"),
    ("a", 1229020, 0, 0.5, "gloomy#1 dreary#1", "depressingly dark"),
    ("a", 1801600, 0.5, 0, "lovely#1", "lovable especially in a childlike or naive way"),
    ("a", 1811997, 0.625, 0, "sunny#1 cheery#1", "bright and pleasant"),
    ("a", 1942007, 0, 0.625, "lazy#1 faineant#1", "disinclined to work or exertion"),
    ("a", 1941026, 0.375, 0, "industrious#1 hardworking#1", "characterized by hard work"),
    ("a", 2082611, 0, 0.5, "busy#1", "actively or fully engaged or occupied"),
    ("a", 2082218, 0.125, 0.125, "idle#1", "not in active use"),
    ("a", 385756, 0, 0.625, "burnt#1 burned#1", "destroyed or badly damaged by fire"),
    ("a", 1175767, 0, 0.625, "wrecked#1 ruined#1", "destroyed physically or morally"),
    ("a", 1737241, 0, 0.25, "green#2 unripe#1", "not fully developed or mature"),
    ("a", 1736122, 0.25, 0, "ripe#1", "fully developed or matured and ready to be eaten"),
    ("a", 373764, 0, 0.5, "crowded#1", "overfilled or compacted or concentrated"),
    ("a", 374101, 0.125, 0, "uncrowded#1", "not overcrowded"),
    ("a", 2451113, 0, 0.625, "angry#1", "feeling or showing anger"),
    ("a", 912913, 0, 0.375, "empty#1", "holding or containing nothing"),
    ("a", 913807, 0.125, 0, "full#1", "containing as much or as many as is possible"),
    ("a", 1514141, 0, 0.5, "heavy#1", "of comparatively great physical weight or density"),
    ("a", 1512527, 0.125, 0, "light#2", "of comparatively little physical weight"),
    ("a", 2291843, 0, 0.625, "stupid#1", "lacking or marked by lack of intellectual acuity"),
    ("a", 438909, 0.5, 0, "smart#1", "showing mental alertness"),
    ("a", 1160031, 0, 0.5, "tired#1", "depleted of strength or energy"),
    ("a", 1159655, 0.375, 0, "rested#1", "not tired"),
    ("a", 2335828, 0, 0.5, "slow#1", "not moving quickly"),
    ("a", 976508, 0.125, 0, "fast#1", "acting or moving quickly"),
    ("a", 1384212, 0, 0.625, "small#1 little#1", "limited or below average in number or quantity"),
    ("a", 1382086, 0.125, 0, "large#1 big#1", "above average in size or number"),
    ("a", 1982646, 0, 0.5, "noisy#1", "full of or characterized by loud and nonmusical sound"),
    ("a", 1918984, 0.375, 0, "quiet#1", "characterized by an absence or near absence of agitation"),
    ("a", 2081114, 0, 0.5, "late#1", "being or occurring at an advanced period of time"),
    ("a", 811248, 0.125, 0, "early#1", "at or near the beginning of a period of time"),
    ("a", 1676026, 0.125, 0, "favorable#1", "encouraging or approving or pleasing"),
    ("a", 1677433, 0, 0.625, "unfavorable#1", "not encouraging or approving or pleasing"),
    ("a", 30647, 0, 0.25, "strange#1", "being definitely out of the ordinary"),
    ("a", 1673815, 0, 0.125, "familiar#1", "well known or easily recognized"),
    ("a", 2226979, 0, 0.375, "rough#1", "having or caused by an irregular surface"),
    ("a", 2231661, 0.375, 0, "smooth#1", "having a surface free from roughness"),
    ("a", 1451213, 0.125, 0, "warm#1", "having or producing a comfortable degree of heat"),
    ("a", 1452593, 0, 0.5, "cool#1", "neither warm nor very cold"),
    ("a", 2566015, 0, 0.625, "weak#1", "wanting in physical strength"),
    ("a", 2321009, 0.375, 0, "strong#1", "having strength or power greater than average"),
    ("a", 1594146, 0, 0.625, "hungry#1", "feeling a need or desire to eat food"),
    ("a", 1594854, 0.25, 0, "full#4 replete#1", "filled to satisfaction with food or drink"),
    ("a", 1070088, 0, 0.75, "miserable#1 wretched#1", "very unhappy; full of misery"),
    ("a", 1172889, 0, 0.5, "sick#1 ill#1", "affected by an impairment of normal physical or mental function"),
    ("a", 1170243, 0.625, 0, "well#1", "in good health especially after having suffered illness or injury"),
    ("a", 2121290, 0, 0.375, "soggy#1 sodden#1", "wet through and through"),
    ("a", 2360351, 0.25, 0, "green#1", "of the color between blue and yellow in the color spectrum"),
    ("a", 371264, 0, 0, "red#1", "of a color at the end of the color spectrum"),
    ("a", 393105, 0, 0, "white#1", "being of the achromatic color of maximum lightness"),
    ("a", 392812, 0, 0.125, "black#1", "being of the achromatic color of maximum darkness"),
    ("a", 2524443, 0, 0, "wild#1", "in a natural state"),
    ("a", 1282510, 0.125, 0, "public#1", "not private"),
    ("a", 2161432, 0, 0, "wooden#1", "made or consisting of wood"),
    ("a", 1993940, 0.125, 0, "open#1", "affording unobstructed entrance and exit"),
    ("a", 1095273, 0.25, 0.125, "fresh#1", "recently made, produced, or harvested"),
    ("a", 1068567, 0.375, 0, "sweet#1", "having or denoting the characteristic taste of sugar"),
    # adverbs
    ("r", 85811, 0, 0.625, "badly#1 poorly#1", "in an inadequate manner"),
    ("r", 12779, 0.5, 0, "well#1 good#1", "in a good or proper or satisfactory manner"),
    ("r", 29933, 0, 0, "quickly#1 rapidly#1", "with rapid movements"),
    ("r", 127948, 0, 0.125, "slowly#1", "without speed"),
    ("r", 105440, 0, 0, "again#1", "anew"),
    ("r", 10704, 0, 0.5, "sadly#1", "in an unfortunate way"),
    ("r", 40698, 0.625, 0, "happily#1", "in an unexpectedly lucky way"),
    ("r", 1755, 0, 0, "suddenly#1", "happening unexpectedly"),
    ("r", 179225, 0, 0.25, "never#1", "not ever"),
    ("r", 24073, 0, 0.5, "not#1", "negation of a word or group of words"),
    # nouns
    ("n", 15157225, 0, 0, "day#1 twenty-four_hours#1", "time for earth to make a complete rotation"),
    ("n", 10287213, 0, 0, "man#1 adult_male#1", "an adult person who is male"),
    ("n", 4363210, 0, 0, "surfboard#1", "a narrow buoyant board for riding surf"),
    ("n", 7352190, 0, 0, "wave#1", "one of a series of ridges that moves across the surface"),
    ("n", 9376198, 0, 0, "ocean#1", "a large body of water"),
    ("n", 7753275, 0, 0, "banana#2", "elongated crescent-shaped yellow fruit"),
    ("n", 12582231, 0, 0, "bananas#1", "fruit of a banana plant"),
    ("n", 13134947, 0, 0, "tree#1", "a tall perennial woody plant"),
    ("n", 8225090, 0, 0, "bunch#1 clump#1 cluster#1", "a grouping of a number of similar things"),
    ("n", 2084071, 0, 0, "dog#1 domestic_dog#1", "a member of the genus Canis"),
    ("n", 2818832, 0, 0, "bed#1", "a piece of furniture that provides a place to sleep"),
    ("n", 3619890, 0, 0, "kitchen#1", "a room equipped for preparing meals"),
    ("n", 3862676, 0, 0, "oven#1", "kitchen appliance used for baking or roasting"),
    ("n", 6519969, 0, 0.125, "traffic#1", "the aggregation of things coming and going"),
    ("n", 7324673, 0, 0.375, "jam#1 traffic_jam#1 snarl-up#1", "a crowded mass that impedes movement"),
    ("n", 3519981, 0, 0, "highway#1 main_road#1", "a major road for any form of motor transport"),
    ("n", 7642471, 0, 0, "birthday_cake#1", "a cake baked for a birthday"),
    ("n", 7628870, 0, 0, "cake#3", "baked goods made from or based on a mixture of flour"),
    ("n", 15250178, 0, 0, "birthday#1", "an anniversary of the day on which a person was born"),
    ("n", 2948072, 0, 0, "candle#1 taper#1 wax_light#1", "stick of wax with a wick in the middle"),
    ("n", 9217230, 0, 0, "beach#1", "an area of sand sloping down to the water"),
    ("n", 2121620, 0, 0, "cat#1 true_cat#1", "feline mammal usually having thick soft fur"),
    ("n", 3614007, 0, 0, "keyboard#1", "device consisting of a set of keys"),
    ("n", 2834778, 0, 0, "bicycle#1 bike#2 wheel#6 cycle#6", "a wheeled vehicle that has two wheels"),
    ("n", 11508382, 0, 0, "snow#2 snowfall#1", "precipitation falling from clouds in the form of ice crystals"),
    ("n", 8524735, 0, 0, "city#1 metropolis#1", "a large and densely populated urban area"),
    ("n", 4507155, 0, 0, "umbrella#1", "a canopy that provides protection from rain or sun"),
    ("n", 7945759, 0, 0, "person#1 individual#1 someone#1", "a human being"),
    ("n", 2958343, 0, 0, "car#1 auto#1 automobile#1", "a motor vehicle with four wheels"),
    ("n", 3001627, 0, 0, "chair#1", "a seat for one person, with a support for the back"),
    ("n", 14868564, 0, 0, "water#1 h2o#1", "binary compound that occurs at room temperature as a clear liquid"),
    ("n", 7301336, 0, 0.5, "crash#1 wreck#1", "a serious accident"),
    ("n", 7314427, 0, 0.625, "failure#1", "an event that does not accomplish its intended purpose"),
    ("n", 7317764, 0.5, 0, "success#1", "an event that accomplishes its intended purpose"),
    ("n", 14474894, 0, 0.75, "misfortune#1 bad_luck#1", "an unfortunate state resulting from unfavorable outcomes"),
    ("n", 14473222, 0.625, 0, "fortune#1 good_fortune#1 luck#1", "an auspicious state resulting from favorable outcomes"),
    ("n", 7554856, 0.25, 0.125, "taste#1", "a strong liking"),
    ("n", 14103288, 0, 0.625, "cold#1 common_cold#1", "a mild viral infection"),
    ("n", 11462526, 0, 0.25, "rain#1 rainfall#1", "water falling in drops from vapor condensed in the atmosphere"),
    ("n", 7406765, 0, 0.375, "mess#1", "a state of confusion and disorderliness"),
    ("n", 14526182, 0, 0, "weather#1", "the atmospheric conditions"),
    ("n", 15228787, 0, 0, "morning#1 morn#1", "the time period between dawn and noon"),
    ("n", 3265032, 0, 0, "edge#1", "the boundary of a surface"),
    ("n", 4379243, 0, 0, "table#2", "a piece of furniture having a smooth flat top"),
    ("n", 3222176, 0, 0, "door#1", "a swinging or sliding barrier"),
    ("n", 8660339, 0, 0, "street#1", "a thoroughfare in a city"),
    ("n", 3244047, 0, 0, "driver#1", "the operator of a motor vehicle"),
    ("n", 9918554, 0, 0, "child#1 kid#1", "a young person of either sex"),
    ("n", 7569106, 0, 0, "food#1 nutrient#1", "any substance that can be metabolized"),
    ("n", 5015117, 0, 0.125, "heat#1", "the presence of heat"),
    ("n", 14245163, 0, 0.5, "fire#1", "the event of something burning"),
    ("n", 3309808, 0, 0, "fabric#1 cloth#1", "artifact made by weaving or knitting"),
    ("n", 2778669, 0, 0, "ball#1", "round object that is hit or thrown or kicked in games"),
    ("n", 9334396, 0, 0, "lake#1", "a body of water surrounded by land"),
    ("n", 4161981, 0, 0, "seat#1", "a space reserved for sitting"),
    ("n", 3384352, 0, 0, "floor#1 flooring#1", "the inside lower horizontal surface"),
    ("n", 3207941, 0, 0, "dish#1", "a piece of dishware normally used as a container"),
    ("n", 5560787, 0, 0, "leg#1", "a human limb"),
    ("n", 2405302, 0, 0, "cow#2", "mature female of mammals of which the male is called bull"),
    ("n", 4490091, 0, 0, "truck#1 motortruck#1", "an automotive vehicle suitable for hauling"),
    ("n", 4037443, 0, 0, "race#1", "any competition"),
    ("n", 9436708, 0, 0, "sky#1", "the atmosphere and outer space as viewed from the earth"),
    ("n", 7007945, 0.125, 0, "party#2", "an occasion on which people can assemble for social interaction"),
    ("n", 8078020, 0, 0, "family#1 household#1", "a social unit living together"),
    ("n", 10506544, 0, 0, "rider#1", "a traveler who actively rides an animal or vehicle"),
    ("n", 13354420, 0, 0, "fall#1", "a sudden drop from an upright position"),
    # verbs
    ("v", 1835496, 0, 0, "ride#2", "be carried or travel on or in a vehicle"),
    ("v", 1909978, 0, 0, "riding#1", "travel on horseback or on a vehicle"),
    ("v", 1481360, 0, 0, "hang#1", "be suspended or hanging"),
    ("v", 1481027, 0, 0, "hanging#1", "be suspended"),
    ("v", 1547001, 0, 0, "lie#1 lying#1", "be lying, be prostrate"),
    ("v", 14010148, 0, 0, "sleep#1 sleeping#1", "be asleep"),
    ("v", 1543123, 0, 0, "sit#1 sitting#1", "be seated"),
    ("v", 2228031, 0, 0.5, "abandon#1 abandoned#1", "forsake, leave behind"),
    ("v", 1972298, 0, 0.375, "fall#1", "descend in free fall under the influence of gravity"),
    ("v", 1896031, 0, 0.5, "crash#2", "undergo a sudden and destructive collapse"),
    ("v", 1775164, 0.625, 0, "love#1", "have a great affection or liking for"),
    ("v", 1774136, 0, 0.75, "hate#1 detest#1", "dislike intensely"),
    ("v", 1100145, 0.5, 0, "win#1", "be the winner in a contest or competition"),
    ("v", 1100830, 0, 0.5, "lose#1", "fail to win"),
    ("v", 2564986, 0, 0.625, "ruin#1 destroy#1", "destroy completely; damage irreparably"),
    ("v", 2371718, 0, 0.25, "burn#1", "destroy by fire"),
    ("v", 2518161, 0.375, 0, "enjoy#1", "derive or receive pleasure from"),
    ("v", 1835496, 0, 0, "travel#1 go#1 move#1", "change location"),
    ("v", 2612368, 0, 0, "wait#1", "stay in one place and anticipate or expect something"),
    ("v", 2367363, 0.125, 0, "work#1", "exert oneself by doing mental or physical work"),
    ("v", 1168468, 0, 0, "eat#1", "take in solid food"),
    ("v", 2079933, 0, 0.625, "rot#1 decompose#1", "break down"),
    ("v", 2203362, 0, 0, "get#1 acquire#1", "come into the possession of something concrete"),
    ("v", 176327, 0, 0.5, "cry#1 weep#1", "shed tears because of sadness, rage, or pain"),
    ("v", 31820, 0.625, 0, "laugh#1", "produce laughter"),
    ("v", 1171183, 0, 0, "drink#1 imbibe#1", "take in liquids"),
    ("v", 1970826, 0, 0, "drop#1", "let fall to the ground"),
    ("v", 2106506, 0, 0, "watch#1", "look attentively"),
    ("v", 1926311, 0, 0, "run#1", "move fast by using one's feet"),
    ("v", 1888511, 0, 0, "fly#1", "travel through the air"),
    ("v", 2199590, 0, 0, "give#1", "transfer possession of something concrete"),
]


def main(out):
    with open(out, "w", encoding="utf-8") as f:
        f.write("# Mini sentiment lexicon in the public SentiWordNet 3.0 column layout.\n")
        f.write("# POS\tID\tPosScore\tNegScore\tSynsetTerms\tGloss\n")
        for pos, sid, ps, ns, terms, gloss in ROWS:
            f.write(f"{pos}\t{sid:08d}\t{ps:g}\t{ns:g}\t{terms}\t{gloss}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/lexicon/mini_sentiwordnet.tsv")
